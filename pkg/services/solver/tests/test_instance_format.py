import pytest
from matching_common import InstanceValidationError

from tests.conftest import I2_TEXT, I3_TEXT, TIED_TEXT


def test_parse_two_by_two(codec, i2):
    assert codec.parse(I2_TEXT) == i2


def test_parse_cyclic_instance(codec, i3):
    assert codec.parse(I3_TEXT) == i3


def test_tie_group_shares_a_rank(codec):
    inst = codec.parse(TIED_TEXT)

    assert inst.woman_rank(0, 0) == 1
    assert inst.woman_rank(0, 1) == 1
    assert inst.has_ties


def test_comments_and_missing_lines(codec):
    inst = codec.parse("# header\np smti 2 1  # two men\nm 1 : 1\nw 1 : 1\n")

    assert inst.n_men == 2
    assert inst.men_prefs[1] == ()
    assert not inst.has_ties


def test_unknown_partner_names_the_line(codec):
    text = "p smti 2 2\nm 1 : 1 3\n"

    with pytest.raises(InstanceValidationError) as exc:
        codec.parse(text)

    assert exc.value.line == 2
    assert str(exc.value) == "unknown woman 3 at line 2"


def test_asymmetric_acceptability_is_rejected(codec):
    with pytest.raises(InstanceValidationError, match="not vice versa"):
        codec.parse("p smti 1 1\nm 1 : 1\n")


@pytest.mark.parametrize(
    "text",
    [
        "m 1 : 1\n",
        "p smti 1\n",
        "p smti 1 1\nm 1 : (1\n",
        "p smti 1 1\nm 1 : ((1))\n",
        "p smti 1 1\nm 1 : x\n",
        "p smti 1 1\nm 1 : 1\nm 1 : 1\n",
        "",
    ],
)
def test_malformed_documents(codec, text):
    with pytest.raises(InstanceValidationError):
        codec.parse(text)


def test_render_writes_tie_groups(codec, tied):
    assert codec.render(tied) == TIED_TEXT


def test_render_parses_back(codec, i3):
    assert codec.parse(codec.render(i3)) == i3
