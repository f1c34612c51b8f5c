# -*- coding: utf-8 -*-
u"""bagbayes setup script

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from pykern import pksetup

pksetup.setup(
    name='bagbayes',
    author='RadiaSoft LLC',
    author_email='pip@radiasoft.net',
    description='Bagged posteriors and overlap diagnostics for reproducible uncertainty quantification',
    install_requires=[
        'numpy',
        'pandas',
        'pykern',
        'scipy',
    ],
    license='http://www.apache.org/licenses/LICENSE-2.0.html',
    url='https://github.com/radiasoft/bagbayes',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
