import pytest

from lhmcavity.config import ConfigError, parse_material_config

GOOD = """\
# canonical host
[electric]
omega_p = 0.75
omega_t = 1.03
gamma = 0.001

[magnetic]
omega_p = 0.43
omega_t = 1.0
gamma = 0.001
"""


def test_parses_canonical_file():
    sections = parse_material_config(GOOD)
    assert sections["electric"] == {"omega_p": 0.75, "omega_t": 1.03, "gamma": 0.001}
    assert sections["magnetic"] == {"omega_p": 0.43, "omega_t": 1.0, "gamma": 0.001}


def test_comments_and_blank_lines_ignored():
    text = GOOD.replace("omega_p = 0.75", "omega_p = 0.75   # coupling")
    assert parse_material_config(text)["electric"]["omega_p"] == 0.75


@pytest.mark.parametrize(
    "mutation, fragment",
    [
        (lambda t: t.replace("omega_p = 0.75", "omega_q = 0.75"), "unknown key"),
        (lambda t: t.replace("[electric]", "[electrics]"), "unknown section"),
        (lambda t: t.replace("0.43", "fast"), "invalid number"),
        (lambda t: t + "[electric]\n", "duplicate section"),
        (lambda t: t.replace("gamma = 0.001\n\n[magnetic]", "gamma = 0.001\ngamma = 0.002\n\n[magnetic]"), "duplicate key"),
        (lambda t: t.replace("omega_t = 1.03\n", ""), "missing key"),
        (lambda t: t.split("[magnetic]")[0], "missing section"),
        (lambda t: "omega_p = 1\n" + t, "outside any section"),
        (lambda t: t.replace("omega_p = 0.75", "omega_p 0.75"), "expected"),
    ],
)
def test_strictness(mutation, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_material_config(mutation(GOOD))
