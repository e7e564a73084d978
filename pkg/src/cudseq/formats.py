"""On-disk formats: digit files, rational/float term files, reports.

Digit text: a header line `# base=<b> order=<k> len=<b**k>` followed by
one decimal digit value per line.

Digit binary: magic `CUDS`, a version byte 0x01, base and digit count as
64-bit little-endian unsigned integers, then the digits as 32-bit
little-endian unsigned integers.

Rational text: one `num/den` per line. Float CSV: one binary64 value
(num/den rounded to nearest) per line.
"""

import struct
from typing import IO, Iterable, Iterator, Tuple

from .debruijn import DigitSeq
from .errors import InputError
from .streams import RationalTerm

DIGIT_MAGIC = b"CUDS"
DIGIT_VERSION = 1

_U32_MAX = (1 << 32) - 1
_U64_MAX = (1 << 64) - 1


def write_digit_text(fp: IO[str], base: int, order: int, digits: Iterable[int]) -> None:
    fp.write(f"# base={base} order={order} len={base**order}\n")
    for d in digits:
        fp.write(f"{d}\n")


def read_digit_text(fp: IO[str]) -> Tuple[DigitSeq, int]:
    """Returns (sequence, order); validates the declared length."""
    header = fp.readline()
    if not header.startswith("# "):
        raise InputError("digit file must start with a `# base=.. order=.. len=..` header")
    fields = {}
    for item in header[2:].split():
        key, _, value = item.partition("=")
        try:
            fields[key] = int(value)
        except ValueError:
            raise InputError(f"bad header field {item!r}") from None
    try:
        base, order, length = fields["base"], fields["order"], fields["len"]
    except KeyError as exc:
        raise InputError(f"digit file header is missing {exc}") from None
    digits = []
    for line in fp:
        line = line.strip()
        if not line:
            continue
        try:
            digits.append(int(line))
        except ValueError:
            raise InputError(f"bad digit line {line!r}") from None
    if len(digits) != length or length != base**order:
        raise InputError("digit file length does not match its header")
    return DigitSeq(base, tuple(digits)), order


def write_digit_binary(fp: IO[bytes], base: int, count: int, digits: Iterable[int]) -> None:
    if not 0 <= base <= _U64_MAX or not 0 <= count <= _U64_MAX:
        raise InputError("base and count must fit in 64 bits")
    fp.write(DIGIT_MAGIC)
    fp.write(bytes([DIGIT_VERSION]))
    fp.write(struct.pack("<QQ", base, count))
    written = 0
    pack = struct.Struct("<I").pack
    for d in digits:
        if not 0 <= d <= _U32_MAX:
            raise InputError(f"digit {d} does not fit in 32 bits")
        fp.write(pack(d))
        written += 1
    if written != count:
        raise InputError(f"wrote {written} digits but the header declared {count}")


def read_digit_binary(fp: IO[bytes]) -> Tuple[int, list]:
    """Returns (base, digits)."""
    magic = fp.read(4)
    if magic != DIGIT_MAGIC:
        raise InputError("not a digit binary file (bad magic)")
    version = fp.read(1)
    if version != bytes([DIGIT_VERSION]):
        raise InputError(f"unsupported digit binary version {version!r}")
    header = fp.read(16)
    if len(header) != 16:
        raise InputError("truncated digit binary header")
    base, count = struct.unpack("<QQ", header)
    payload = fp.read(4 * count)
    if len(payload) != 4 * count:
        raise InputError("truncated digit binary payload")
    digits = list(struct.unpack(f"<{count}I", payload)) if count else []
    return base, digits


def write_rational_text(fp: IO[str], terms: Iterable[RationalTerm]) -> None:
    for num, den in terms:
        fp.write(f"{num}/{den}\n")


def read_rational_text(fp: IO[str]) -> Iterator[RationalTerm]:
    """Yield (num, den) pairs; validates 0 <= num < den."""
    for lineno, line in enumerate(fp, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        num_str, sep, den_str = line.partition("/")
        if not sep:
            raise InputError(f"line {lineno}: expected num/den, got {line!r}")
        try:
            num, den = int(num_str), int(den_str)
        except ValueError:
            raise InputError(f"line {lineno}: expected num/den, got {line!r}") from None
        if den < 1 or not 0 <= num < den:
            raise InputError(f"line {lineno}: term {line!r} is not in [0, 1)")
        yield num, den


def write_float_csv(fp: IO[str], terms: Iterable[RationalTerm]) -> None:
    for num, den in terms:
        fp.write(f"{num / den!r}\n")


def write_convergence_csv(fp: IO[str], rows) -> None:
    fp.write("N,ratio,deviation\n")
    for row in rows:
        fp.write(f"{row.N},{row.ratio!r},{row.deviation!r}\n")
