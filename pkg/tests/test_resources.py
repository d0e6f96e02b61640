from plcube.resources import Resources


def test_defaults():
    r = Resources()
    assert r.getOptionAsInt('ball_radius_cap_1d') == 6
    assert r.getOptionAsInt('ball_radius_cap_2d') == 4
    assert r.getOptionAsInt('seed') == 0
    assert not r.getOptionAsBool('log_print_output')


def test_unknown_option_reads_empty():
    r = Resources()
    assert r.getOption('no_such_option') == ''
    assert r.getOptionAsInt('no_such_option') == 0


def test_parse_options_and_imports(tmp_path):
    shared = tmp_path / 'shared.rc'
    shared.write_text('option jobs 4\n')
    rc = tmp_path / 'plcuberc'
    rc.write_text(
        '# caps for larger experiments\n'
        'option ball_radius_cap_1d 8\n'
        'import shared.rc\n'
        'option seed not-a-number\n'
        'bogus keyword\n'
        'option unknown_option 3\n')
    r = Resources()
    r.parse(str(rc))
    assert r.getOptionAsInt('ball_radius_cap_1d') == 8
    assert r.getOptionAsInt('jobs') == 4
    # bad lines are reported and skipped
    assert r.getOptionAsInt('seed') == 0


def test_files_are_parsed_once(tmp_path):
    rc = tmp_path / 'plcuberc'
    rc.write_text('option seed 7\n')
    r = Resources()
    r.parse(str(rc))
    r.setOption('seed', '9')
    r.parse(str(rc))
    assert r.getOptionAsInt('seed') == 9
