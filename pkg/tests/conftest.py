import pytest

from gemcheck import theory


@pytest.fixture(scope="session", autouse=True)
def builtin_theories_match_thy_files():
    """The shipped .thy files must parse back to the built-in registries."""
    for name in theory.theory_names():
        parsed = theory.parse_theory_text(name, theory.builtin_theory_text(name))
        built = theory.theory_by_name(name)
        assert [nf.name for nf in parsed] == [nf.name for nf in built], name
        for a, b in zip(parsed, built):
            assert a.sentence == b.sentence, (name, a.name)
