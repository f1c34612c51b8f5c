# -*- coding: utf-8 -*-
u"""test bagbayes.runconfig

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
import pytest


def test_load_overrides():
    from bagbayes import runconfig
    from pykern import pkunit

    c = runconfig.load('asymptotic', None, ['kind=location', 'v=1', 'sigma_true=[[25]]', 'which=bagged'])
    pkunit.pkeq('location', c.kind)
    pkunit.pkeq([[1.0]], c.v)
    pkunit.pkeq([[25.0]], c.sigma_true)
    pkunit.pkeq('bagged', c.which)
    pkunit.pkeq(0.05, c.alpha)
    c = runconfig.load('overlap_sim', None, ['levels=[0.5, 0.9]', 'f_kind=nonlinear'])
    pkunit.pkeq([0.5, 0.9], c.levels)
    pkunit.pkeq('nonlinear', c.f_kind)
    pkunit.pkeq(None, c.r)


def test_load_errors():
    from bagbayes import errors, runconfig
    from pykern import pkunit

    for o in (
        ['n=5', 'colour=red'],
        ['n=abc'],
        ['n=2.5'],
        ['full_scale=1'],
        ['f_kind=cubic'],
        ['levels=[]'],
        ['novalue'],
    ):
        with pkunit.pkexcept(errors.ConfigError):
            runconfig.load('overlap_sim', None, o)
    with pkunit.pkexcept('missing required key=data'):
        runconfig.load('bag_fit', None, [])
    with pkunit.pkexcept('rows have different lengths'):
        runconfig.load('asymptotic', None, ['kind=regular', 'j=[[1,0],[0]]'])


def test_load_file():
    from bagbayes import errors, runconfig
    from pykern import pkunit

    d = pkunit.empty_work_dir()
    d.join('ok.json').write('{"n": 30, "d": 3}')
    c = runconfig.load('overlap_sim', str(d.join('ok.json')), ['d=4'])
    pkunit.pkeq((30, 4), (c.n, c.d))
    d.join('bad.json').write('{\n  "n": 30,\n}\n')
    with pkunit.pkexcept('line 3'):
        runconfig.load('overlap_sim', str(d.join('bad.json')))
    d.join('list.json').write('[1, 2]')
    with pkunit.pkexcept(errors.ConfigError):
        runconfig.load('overlap_sim', str(d.join('list.json')))
    with pkunit.pkexcept(errors.ConfigError):
        runconfig.load('overlap_sim', str(d.join('missing.json')))


def test_seed_override(monkeypatch):
    from bagbayes import runconfig
    from pykern import pkunit
    import bagbayes

    pkunit.pkeq(3, runconfig.load('fig1', None, ['root_seed=3']).root_seed)
    monkeypatch.setattr(bagbayes.cfg, 'seed', 17)
    pkunit.pkeq(17, runconfig.load('fig1', None, ['root_seed=3']).root_seed)


def test_help_text():
    from bagbayes import runconfig
    from pykern import pkunit

    for c, s in runconfig.SCHEMAS.items():
        t = runconfig.help_text(c)
        for k in s:
            pkunit.pkok(f'  {k}: ' in t, 'command={} key={} missing from help', c, k)
    t = runconfig.help_text('asymptotic')
    pkunit.pkok('kind: one of location, growing-dim, regular, linreg (default null)' in t, 'kind help={}', t)
    pkunit.pkok('theorem: one of 2, 3, 4, 5 (default null)' in t, 'theorem help={}', t)
    pkunit.pkok('data: str dataset CSV' in runconfig.help_text('bag_fit'), 'required key has no default')


def test_outputs():
    from bagbayes import runconfig
    from pykern import pkjson, pkunit

    d = pkunit.empty_work_dir()
    c = runconfig.load('fig1', None, [f'output_dir={d.join("out")}'])
    pkunit.pkeq(runconfig.config_hash(c), runconfig.config_hash(runconfig.load('fig1', None, [f'output_dir={d.join("out")}'])))
    p = runconfig.write_json('fig1', c, 'x.json', {'value': 1.5})
    j = pkjson.load_any(p.read())
    pkunit.pkeq(1.5, j.value)
    pkunit.pkeq('fig1', j.metadata.command)
    pkunit.pkeq(runconfig.config_hash(c), j.metadata.config_sha256)
    s = runconfig.write_sidecar('fig1', c, p.dirpath().join('t.csv'), runs=[1, 2])
    pkunit.pkeq('t.csv.meta.json', s.basename)
    pkunit.pkeq([1, 2], pkjson.load_any(s.read()).runs)


def test_build_model():
    from bagbayes import errors, models, runconfig
    from pykern import pkunit

    loc = models.LocationData([[1.0, 2.0], [0.0, 1.0]])
    c = runconfig.load('bag_fit', None, ['data=x.csv', 'v=2'])
    m = runconfig.build_model(c, loc)
    pkunit.pkeq([[2.0, 0.0], [0.0, 2.0]], m.v.tolist())
    with pkunit.pkexcept(errors.InvalidArgument):
        runconfig.build_model(runconfig.load('bag_fit', None, ['data=x.csv', 'v=[[1,0,0]]']), loc)
    r = models.RegressionData([[1.0], [1.0], [1.0]], [1.0, 2.0, 3.0])
    m = runconfig.build_model(runconfig.load('bag_fit', None, ['data=x.csv', 'model=flat_linreg']), r)
    pkunit.pkok(abs(m.sigma2 - 1.0) < 1e-12, 'sigma2={}', m.sigma2)
    m = runconfig.build_model(runconfig.load('sample', None, ['data=x.csv', 'model=nig_regression', 'lam=3']), r)
    pkunit.pkeq(3.0, m.lam)
    with pkunit.pkexcept('needs regression data'):
        runconfig.build_model(runconfig.load('bag_fit', None, ['data=x.csv', 'model=flat_linreg']), loc)


def test_asymptotic_kind():
    from bagbayes import errors, runconfig
    from pykern import pkunit

    def _kind(*overrides):
        return runconfig.asymptotic_kind(runconfig.load('asymptotic', None, overrides))

    pkunit.pkeq('location', _kind('kind=location'))
    for t, k in (2, 'location'), (3, 'growing-dim'), (4, 'regular'), (5, 'linreg'):
        pkunit.pkeq(k, _kind(f'theorem={t}'))
    pkunit.pkeq('regular', _kind('theorem=4', 'kind=regular'))
    with pkunit.pkexcept('conflicts with theorem=3'):
        _kind('theorem=3', 'kind=location')
    with pkunit.pkexcept('missing required key=kind'):
        _kind()
    with pkunit.pkexcept(errors.ConfigError):
        _kind('theorem=1')
