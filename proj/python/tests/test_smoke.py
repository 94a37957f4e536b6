import fancross


def test_import():
    assert fancross.__version__
