# -*- coding: utf-8 -*-
u"""Front-end command line for :mod:`bagbayes`.

See :mod:`pykern.pkcli` for how this module is used.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from pykern import pkcli
from pykern.pkdebug import pkdexc, pkdlog
import sys


def main(argv=None):
    """Dispatch to :mod:`bagbayes.pkcli` and map failures to exit codes

    Returns:
      * 0 on success, 2 for configuration or precondition errors, 1 otherwise
    """
    from bagbayes import errors

    try:
        return pkcli.main('bagbayes', argv=argv)
    except errors.USAGE_ERRORS as e:
        pkdlog('configuration error: {}', e)
        return 2
    except Exception as e:
        pkdlog('runtime failure: {} {}', e, pkdexc())
        return 1


if __name__ == '__main__':
    sys.exit(main())
