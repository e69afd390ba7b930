import pytest

from tncbgen import load_bag
from tncbgen.bag import Bag
from tncbgen.initialize import format_bracketing, load_bracketing
from tncbgen.signs import GrammarError, Sign
from tncbgen.transfer import (SourceBag, TransferError, UnsupportedEntry,
                              index_groups, parse_lexicon, transfer_bag,
                              transfer_sign)


INDEX_FEATURES = {"idx", "spec", "mod", "ev", "subj"}


def shape(b):
    return (shape(b[0]), shape(b[1])) if isinstance(b, tuple) else "."


@pytest.fixture
def japanese(data):
    return SourceBag(load_bag(data / "hon.bag.json"),
                     load_bracketing(data / "hon.brk"))


@pytest.fixture
def french(data):
    return SourceBag(load_bag(data / "chien.bag.json"),
                     load_bracketing(data / "chien.brk"))


def lex(data, name):
    return parse_lexicon((data / name).read_text())


def test_japanese_to_english(data, japanese):
    bag, b = transfer_bag(japanese, lex(data, "ja-en.lex"))
    assert sorted(bag.orths()) == ["book", "is", "red", "the"]
    assert format_bracketing(b) == "((book the) (red is))"


def test_french_to_english(data, french):
    bag, b = transfer_bag(french, lex(data, "fr-en.lex"))
    assert sorted(bag.orths()) == ["barked", "big", "brown", "dog", "the"]
    assert format_bracketing(b) == "((the ((big dog) brown)) barked)"


@pytest.mark.parametrize("name,src", [("ja-en.lex", "japanese"),
                                      ("fr-en.lex", "french")])
def test_indices_and_shape_preserved(data, request, name, src):
    src = request.getfixturevalue(src)
    bag, b = transfer_bag(src, lex(data, name))
    assert bag.ids == src.bag.ids
    assert index_groups(bag, INDEX_FEATURES) == \
        index_groups(src.bag, INDEX_FEATURES)
    assert shape(b) == shape(src.bracketing)


def test_empty_lexicon_uncovered(japanese):
    with pytest.raises(TransferError, match="no lexicon entry"):
        transfer_bag(japanese, [])


def test_ambiguous_coverage():
    entries = parse_lexicon("xfer N:chat[idx=X] => N:cat[idx=X]\n"
                            "xfer N:chat[idx=X] => N:puss[idx=X]\n")
    with pytest.raises(TransferError, match="several"):
        transfer_sign(Sign.make("N", "chat", idx=1), entries)


def test_variables_copy_through():
    entries = parse_lexicon("xfer V:voit[ev=E,subj=X,obj=Y] => "
                            "V:sees[ev=E,subj=X,obj=Y]")
    s = transfer_sign(Sign.make("V", "voit", ev=3, subj=1, obj=2), entries)
    assert s.fmap == {"ev": 3, "subj": 1, "obj": 2}


def test_unbound_target_variable_rejected():
    with pytest.raises(GrammarError):
        parse_lexicon("xfer N:chat[idx=X] => N:cat[idx=Y]")


def test_set_entries_parse_but_do_not_run():
    entries = parse_lexicon("xfer V:kick[ev=E] + N:bucket[idx=X] => "
                            "V:die[ev=E]")
    assert not entries[0].one_to_one
    with pytest.raises(UnsupportedEntry):
        transfer_sign(Sign.make("V", "kick", ev=1), entries)


def test_bad_lexicon_line():
    with pytest.raises(GrammarError) as e:
        parse_lexicon("; ok\nxfer nonsense\n")
    assert e.value.line == 2


def test_duplicate_target_orths_fall_back_to_ids():
    src = SourceBag(Bag(("a", "b"), (Sign.make("DET", "le", spec=1),
                                     Sign.make("DET", "la", spec=2))),
                    ("le", "la"))
    entries = parse_lexicon("xfer DET:le[spec=X] => DET:the[spec=X]\n"
                            "xfer DET:la[spec=X] => DET:the[spec=X]\n")
    bag, b = transfer_bag(src, entries)
    assert b == ("a", "b")


def test_index_groups(dog_bag):
    groups = index_groups(dog_bag, INDEX_FEATURES)
    orths = sorted(sorted(dog_bag.signs[i].orth for i in g) for g in groups)
    assert orths == [["PAST", "bark"], ["bark", "big", "brown", "dog", "the"]]
