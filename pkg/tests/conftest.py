import pytest

from conjtop.models import model_library


@pytest.fixture(scope="session")
def library():
    return model_library()


def chain_bits(K, simplices):
    bits = 0
    for s in simplices:
        bits |= 1 << K.index_of(tuple(s))
    return bits


def marked_basis(library, name):
    K = library.complexes[name]
    marks = library.cycles.get(name, {})
    basis = []
    i = 0
    while f"basis{i}" in marks:
        basis.append(chain_bits(K, marks[f"basis{i}"]))
        i += 1
    return basis or None


def involution_model(library, name):
    src, _, tau = library.maps[name]
    return library.complexes[src], tau, marked_basis(library, src)
