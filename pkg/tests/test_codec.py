import pytest
from hypothesis import given, settings, strategies as st

from dimers import codec, oracle
from dimers.errors import InvalidCode, InvalidDimensions
from dimers.grid import GridSpec, Vertex
from dimers.codec import TilingCode


def _code(text, m, n):
    return TilingCode.from_string(text, m, n)


def test_two_by_two_codes():
    horizontal = codec.decode(_code("00", 2, 2))
    vertical = codec.decode(_code("11", 2, 2))
    assert horizontal.vertical_count() == 0
    assert vertical.vertical_count() == 2
    assert not codec.is_valid_code(_code("10", 2, 2))
    assert not codec.is_valid_code(_code("01", 2, 2))


def test_invalid_code_reports_index():
    with pytest.raises(InvalidCode) as info:
        codec.decode(_code("10", 2, 2))
    assert info.value.index == 1
    with pytest.raises(InvalidCode) as info:
        codec.decode(_code("1", 1, 2))
    assert info.value.index == 0


def test_wrong_length():
    with pytest.raises(InvalidCode):
        codec.decode(_code("000", 2, 2))
    with pytest.raises(InvalidCode):
        _code("0a", 2, 2)


def test_torus_has_no_code():
    with pytest.raises(InvalidDimensions):
        TilingCode((0,) * 8, GridSpec.torus(4, 4))


@pytest.mark.parametrize("m,n", [(2, 2), (3, 4), (4, 4), (2, 7), (5, 6)])
def test_round_trip_and_length(m, n):
    grid = GridSpec.rectangle(m, n)
    codes = set()
    for mu in oracle.iter_matchings(grid):
        code = codec.encode(mu)
        assert len(code.bits) == m * n // 2
        assert codec.decode(code) == mu
        codes.add(code.bits)
    assert len(codes) == oracle.enumerate_matchings(grid)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 4), (4, 4)])
def test_valid_codes_are_exactly_tilings(m, n):
    # every bit string of the right length either decodes or is rejected; the valid ones
    # are in bijection with the tilings
    nbits = m * n // 2
    valid = sum(codec.is_valid_code(TilingCode(tuple((k >> i) & 1 for i in range(nbits)), GridSpec.rectangle(m, n)))
                for k in range(2 ** nbits))
    assert valid == oracle.enumerate_matchings(GridSpec.rectangle(m, n))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_decode_encode_on_random_bits(m, n, data):
    if (m * n) % 2:
        return
    bits = data.draw(st.lists(st.integers(0, 1), min_size=m * n // 2, max_size=m * n // 2))
    code = TilingCode(tuple(bits), GridSpec.rectangle(m, n))
    if codec.is_valid_code(code):
        assert codec.encode(codec.decode(code)) == code


def test_byte_format():
    code = _code("11", 2, 2)
    assert code.to_bytes() == b"\x00\x02\x00\x02\xc0"
    assert TilingCode.from_bytes(code.to_bytes()) == code


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.data())
def test_bytes_round_trip(m, n, data):
    if (m * n) % 2:
        return
    bits = data.draw(st.lists(st.integers(0, 1), min_size=m * n // 2, max_size=m * n // 2))
    code = TilingCode(tuple(bits), GridSpec.rectangle(m, n))
    raw = code.to_bytes()
    assert len(raw) == 4 + (m * n // 2 + 7) // 8
    assert TilingCode.from_bytes(raw) == code


def test_bytes_rejects_bad_payloads():
    with pytest.raises(InvalidCode):
        TilingCode.from_bytes(b"\x00\x02")
    with pytest.raises(InvalidCode):
        TilingCode.from_bytes(b"\x00\x02\x00\x02\xc0\x00")
    with pytest.raises(InvalidCode):
        TilingCode.from_bytes(b"\x00\x02\x00\x02\xc1")


def test_as_int_orders_codes():
    assert _code("00", 2, 2).as_int() == 0
    assert _code("11", 2, 2).as_int() == 3


def test_encode_reads_first_free_cell():
    mu = codec.decode(_code("100", 2, 3))
    partner = mu.partner()
    assert partner[Vertex(1, 1)] == Vertex(1, 2)
    assert partner[Vertex(2, 1)] == Vertex(3, 1)
    assert partner[Vertex(2, 2)] == Vertex(3, 2)
