import os
from fractions import Fraction

import pytest

import shiftcert.IO
from shiftcert.amenability import ExpansionCertificate, FolnerCertificate, ParadoxCertificate, classicalPieces, expansionCertificate, folnerSearch, verifyCertificate, xstCertificate, xtPatchFromExpansion
from shiftcert.compressible import WitnessPatch
from shiftcert.core import VerificationError
from shiftcert.groups import ball, parseGroup
from shiftcert.matching import BipartiteGraph, kToOneSurjection
from shiftcert.subshift import Patch, extendSearch, goldenMean, hardCore


def _edit(filename, old, new):

    with open(filename, encoding = 'utf-8') as f:
        text = f.read()

    assert old in text, "'%s' not found in %s"%(old, filename)

    with open(filename, 'w', encoding = 'utf-8') as f:
        f.write(text.replace(old, new, 1))


def test_folner_round_trip(tmp_path):

    Z2 = parseGroup('Z^2')
    cert = folnerSearch(Z2, None, 0.5, 10)

    filename = shiftcert.IO.writeCertificate(cert, output_dir = str(tmp_path))
    assert os.path.basename(filename) == 'folner_Z2_N4.xml'

    loaded = shiftcert.IO.readCertificate(filename)

    assert isinstance(loaded, FolnerCertificate)
    assert loaded.index == 4
    assert loaded.ratio == Fraction(20, 41)
    assert set(loaded.F) == set(cert.F)
    assert verifyCertificate(loaded)


def test_default_filename_uses_cache(cache_dir, F2):

    filename = shiftcert.IO.writeCertificate(expansionCertificate(F2, None, 2))

    assert os.path.dirname(filename) == os.path.abspath(str(cache_dir))
    assert os.path.basename(filename) == 'expansion_F2_R2.xml'


def test_expansion_round_trip(tmp_path, F2):

    cert = expansionCertificate(F2, None, 3)

    filename = shiftcert.IO.writeCertificate(cert, filename = str(tmp_path / 'expansion.xml'))
    loaded = shiftcert.IO.readCertificate(filename)

    assert isinstance(loaded, ExpansionCertificate)
    assert loaded.R == 3
    assert loaded.assignment == cert.assignment
    assert loaded.verify()


def test_paradox_round_trips(tmp_path, F2):

    S, T, pieces = classicalPieces(F2)
    xst = xstCertificate(F2, S, T, pieces, 4)
    xt = xtPatchFromExpansion(expansionCertificate(F2, None, 3))

    for cert in [xst, xt]:
        filename = shiftcert.IO.writeCertificate(cert, output_dir = str(tmp_path))
        loaded = shiftcert.IO.readCertificate(filename)

        assert isinstance(loaded, ParadoxCertificate)
        assert loaded.kind == cert.kind
        assert loaded.cells == cert.cells
        assert loaded.R0 == cert.R0
        assert verifyCertificate(loaded)


def test_witness_round_trip(tmp_path, toy_build):

    witness = toy_build['witness']

    filename = shiftcert.IO.writeCertificate(witness, output_dir = str(tmp_path))
    loaded = shiftcert.IO.readCertificate(filename)

    assert isinstance(loaded, WitnessPatch)
    assert loaded.patch == witness.patch
    assert loaded.params.S_prime == witness.params.S_prime
    assert loaded.verify()


def test_witness_interior_radius_is_recomputed(tmp_path, toy_build):

    witness = toy_build['witness']
    assert witness.R0 == 1

    for R0 in [0, 2]:
        bad = WitnessPatch(witness.params, witness.patch, witness.R, R0, None)

        # Written with a consistent digest, so only verify can reject it
        filename = shiftcert.IO.writeCertificate(bad, filename = str(tmp_path / ('witness_%s.xml'%str(R0))))
        loaded = shiftcert.IO.readCertificate(filename)
        assert loaded.R0 == R0

        with pytest.raises(VerificationError):
            loaded.verify()


def test_tampered_file_is_rejected(tmp_path):

    Z2 = parseGroup('Z^2')
    filename = shiftcert.IO.writeCertificate(folnerSearch(Z2, None, 0.5, 10), output_dir = str(tmp_path))

    _edit(filename, 'index="4"', 'index="5"')

    with pytest.raises(VerificationError):
        shiftcert.IO.readCertificate(filename)


def test_wrong_stored_ratio_is_caught(tmp_path):

    Z2 = parseGroup('Z^2')
    cert = folnerSearch(Z2, None, 0.5, 10)
    bad = FolnerCertificate(Z2, cert.S, cert.F, Fraction(1, 3), cert.epsilon, cert.index)

    # A consistent digest does not make the content valid
    filename = shiftcert.IO.writeCertificate(bad, output_dir = str(tmp_path))
    loaded = shiftcert.IO.readCertificate(filename)

    with pytest.raises(VerificationError):
        verifyCertificate(loaded)


def test_format_version_mismatch(tmp_path, F2):

    filename = shiftcert.IO.writeCertificate(expansionCertificate(F2, None, 1), output_dir = str(tmp_path))

    _edit(filename, 'format-version="1"', 'format-version="2"')

    with pytest.raises(ValueError):
        shiftcert.IO.readCertificate(filename)


def test_patch_round_trip(tmp_path, Z):

    spec = goldenMean(Z)
    patch = extendSearch(spec, Patch(Z, {}), ball(Z, None, 3).elements)

    filename = shiftcert.IO.writePatch(patch, str(tmp_path / 'patch.xml'), spec = spec)

    assert shiftcert.IO.readPatch(filename, spec = spec) == patch
    assert shiftcert.IO.readPatch(filename) == patch

    with pytest.raises(VerificationError):
        shiftcert.IO.readPatch(filename, spec = hardCore(Z))

    with pytest.raises(ValueError):
        shiftcert.IO.readPatch(filename, spec = goldenMean(parseGroup('F2')))


def test_partial_patch_keeps_domain(tmp_path, F2):

    domain = ball(F2, None, 1).elements
    patch = Patch(F2, {F2.identity: 'p', F2.parse('a⁻¹'): 3}, domain)

    filename = shiftcert.IO.writePatch(patch, str(tmp_path / 'partial.xml'))
    loaded = shiftcert.IO.readPatch(filename)

    assert loaded == patch
    assert loaded.cells[F2.parse('a⁻¹')] == 3


def test_graph_round_trip(tmp_path):

    g = BipartiteGraph([1, 2, 3, 4], [10, 20], {1: [10], 2: [10, 20], 3: [20], 4: [10, 20]})

    filename = shiftcert.IO.writeGraph(g, str(tmp_path / 'graph.xml'))
    loaded = shiftcert.IO.readGraph(filename, parse = int)

    assert loaded.left == g.left
    assert loaded.right == g.right
    assert sorted(loaded.edges()) == sorted(g.edges())
    assert kToOneSurjection(loaded, 2)


def test_unknown_object_is_rejected(tmp_path):

    with pytest.raises(ValueError):
        shiftcert.IO.writeCertificate(object(), filename = str(tmp_path / 'x.xml'))
