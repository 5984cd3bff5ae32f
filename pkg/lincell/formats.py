"""File formats: portable bitmaps (P1/P4), BitMatrix and dependency-map text,
hybrid rule files, sweep metric tables and ASCII previews."""

import csv
import math
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import torch
import torch.nn.functional as F

from .automaton import HybridSpec
from .gf2 import BitMatrix
from .grid import CELL_DTYPE, Grid
from .matrices import DependencyMap

PathLike = Union[str, Path]

IMAGE_FORMATS = ("P1", "P4")
MAX_PIXELS = 1 << 28
_WHITESPACE = b" \t\r\n\v\f"
P1_LINE_WIDTH = 70


class ImageFormatError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MalformedHeaderError(ImageFormatError):
    pass


class TruncatedDataError(ImageFormatError):
    pass


class DimensionOverflowError(ImageFormatError):
    pass


def _skip_filler(data: bytes, pos: int) -> int:
    while pos < len(data):
        byte = data[pos:pos + 1]
        if byte == b"#":
            while pos < len(data) and data[pos:pos + 1] != b"\n":
                pos += 1
        elif byte in _WHITESPACE:
            pos += 1
        else:
            break
    return pos


def _read_header(data: bytes) -> Tuple[str, int, int, int]:
    magic = data[:2]
    if len(data) < 2 or magic not in (b"P1", b"P4"):
        raise MalformedHeaderError(f"Not a portable bitmap: magic {magic!r}", 0)
    pos = 2
    if pos < len(data) and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        raise MalformedHeaderError("Magic number must be followed by whitespace", pos)
    values = []
    for name in ("width", "height"):
        pos = _skip_filler(data, pos)
        start = pos
        while pos < len(data) and data[pos:pos + 1].isdigit():
            pos += 1
        if pos == start:
            if pos >= len(data):
                raise MalformedHeaderError(f"Header ends before the {name}", pos)
            raise MalformedHeaderError(f"Expected the {name}, found {data[pos:pos + 1]!r}", pos)
        value = int(data[start:pos])
        if value == 0:
            raise MalformedHeaderError(f"Image {name} must be positive", start)
        values.append(value)
    width, height = values
    if width * height > MAX_PIXELS:
        raise DimensionOverflowError(f"Image of {width}x{height} exceeds {MAX_PIXELS} pixels", 2)
    return magic.decode("ascii"), width, height, pos


def _parse_p1(data: bytes, pos: int, width: int, height: int) -> torch.Tensor:
    expected = width * height
    bits = []
    while True:
        pos = _skip_filler(data, pos)
        if pos >= len(data):
            break
        byte = data[pos:pos + 1]
        if byte not in (b"0", b"1"):
            raise ImageFormatError(f"Unexpected byte {byte!r} in bitmap data", pos)
        if len(bits) == expected:
            raise DimensionOverflowError(
                f"More than the {expected} pixels declared by a {width}x{height} header", pos
            )
        bits.append(1 if byte == b"1" else 0)
        pos += 1
    if len(bits) < expected:
        raise TruncatedDataError(f"Found {len(bits)} of {expected} pixels", len(data))
    return torch.tensor(bits, dtype=CELL_DTYPE).reshape(height, width)


def _parse_p4(data: bytes, pos: int, width: int, height: int) -> torch.Tensor:
    if pos >= len(data):
        raise TruncatedDataError("Header ends without pixel data", pos)
    if data[pos:pos + 1] not in _WHITESPACE:
        raise MalformedHeaderError("Height must be followed by a single whitespace byte", pos)
    pos += 1
    row_bytes = (width + 7) // 8
    needed = row_bytes * height
    available = len(data) - pos
    if available < needed:
        raise TruncatedDataError(f"Found {available} of {needed} data bytes", len(data))
    extra = data[pos + needed:]
    if extra.strip(_WHITESPACE):
        raise DimensionOverflowError(
            f"{len(extra)} bytes follow the {needed} declared by a {width}x{height} header", pos + needed
        )
    packed = np.frombuffer(data, dtype=np.uint8, count=needed, offset=pos).reshape(height, row_bytes)
    bits = np.unpackbits(packed, axis=1)[:, :width]
    return torch.from_numpy(np.ascontiguousarray(bits)).to(CELL_DTYPE)


def decode_image(data: bytes) -> Grid:
    magic, width, height, pos = _read_header(data)
    if magic == "P1":
        return Grid(_parse_p1(data, pos, width, height))
    return Grid(_parse_p4(data, pos, width, height))


def read_image(path: PathLike) -> Grid:
    return decode_image(Path(path).read_bytes())


def encode_image(g: Grid, fmt: str = "P4") -> bytes:
    fmt = fmt.upper()
    header = f"{fmt}\n{g.cols} {g.rows}\n".encode("ascii")
    if fmt == "P4":
        packed = np.packbits(g.cells.numpy().astype(np.uint8), axis=1)
        return header + packed.tobytes()
    if fmt == "P1":
        lines = []
        per_line = P1_LINE_WIDTH // 2
        for row in g.to_rows():
            for k in range(0, len(row), per_line):
                lines.append(" ".join(str(v) for v in row[k:k + per_line]))
        return header + ("\n".join(lines) + "\n").encode("ascii")
    raise ValueError(f"Unknown image format: {fmt}. Use one of {', '.join(IMAGE_FORMATS)}")


def write_image(g: Grid, path: PathLike, fmt: str = "P4"):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_image(g, fmt))


def format_matrix(mat: BitMatrix) -> str:
    lines = [f"{mat.rows} {mat.cols}"]
    lines.extend("".join(str(v) for v in row) for row in mat.to_rows())
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BitMatrix:
    lines = text.splitlines()
    if not lines:
        raise ValueError("Matrix text is empty")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise ValueError(f"Line 1: expected 'rows cols', got {lines[0]!r}")
    rows, cols = int(header[0]), int(header[1])
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != rows:
        raise ValueError(f"Matrix declares {rows} rows but has {len(body)}")
    entries = []
    for number, line in enumerate(body, start=2):
        line = line.strip()
        if len(line) != cols or set(line) - {"0", "1"}:
            raise ValueError(f"Line {number}: expected {cols} characters of 0/1, got {line!r}")
        entries.append([1 if ch == "1" else 0 for ch in line])
    return BitMatrix.from_rows(entries)


def format_dependency_map(dep: DependencyMap) -> str:
    return "\n".join(" ".join(str(d) for d in deps) for deps in dep.one_based()) + "\n"


def parse_dependency_map(text: str, rows: int, cols: int) -> DependencyMap:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    cells = []
    for number, line in enumerate(lines, start=1):
        tokens = line.split()
        if not all(t.isdigit() for t in tokens):
            raise ValueError(f"Line {number}: dependency indices must be positive integers, got {line!r}")
        cells.append([int(t) for t in tokens])
    return DependencyMap.from_one_based(rows, cols, cells)


def parse_rules(text: str) -> HybridSpec:
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not all(t.isdigit() for t in tokens):
            raise ValueError(f"Line {number}: rules must be decimal numbers, got {line!r}")
        rows.append([int(t) for t in tokens])
    if not rows:
        raise ValueError("Rules file holds no rules")
    try:
        return HybridSpec.from_rows(rows)
    except ValueError as e:
        raise ValueError(f"Rules file: {e}")


def read_text(path: PathLike) -> str:
    return Path(path).read_text(encoding="utf-8")


def read_rules_file(path: PathLike) -> HybridSpec:
    return parse_rules(read_text(path))


def write_text(text: str, path: PathLike):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_metrics_table(samples, path: PathLike):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["iteration", "population", "distance", "radius"])
        for iteration, sample in enumerate(samples):
            writer.writerow([iteration, sample.population, sample.distance, sample.radius])


def frame_path(directory: PathLike, index: int) -> Path:
    return Path(directory) / f"frame_{index:04d}.pbm"


def dump_frames(frames: List[Grid], directory: PathLike, fmt: str = "P4") -> List[Path]:
    paths = []
    for index, g in enumerate(frames):
        path = frame_path(directory, index)
        write_image(g, path, fmt)
        paths.append(path)
    return paths


def render_ascii(g: Grid, max_width: Optional[int] = None, on: str = "#", off: str = ".") -> str:
    """One character per cell; wide grids are OR-pooled down to max_width columns."""
    cells = g.cells
    if max_width is not None and max_width > 0 and g.cols > max_width:
        factor = math.ceil(g.cols / max_width)
        padded = F.pad(
            cells.to(torch.float32)[None, None],
            (0, -g.cols % factor, 0, -g.rows % factor),
        )
        cells = F.max_pool2d(padded, kernel_size=factor, stride=factor)[0, 0].to(CELL_DTYPE)
    return "\n".join("".join(on if v else off for v in row) for row in cells.tolist()) + "\n"
