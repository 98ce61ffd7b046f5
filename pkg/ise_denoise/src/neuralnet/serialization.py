"""Text model files.

Layout::

    ISEDNN 1
    arch 4 256 256 256 256 4
    norm_in <float> norm_out <float>
    W <fan_in rows of width values, one row per line, each tagged W>
    b <width values>
    gamma ... / beta ... / running_mean ... / running_var ...   (batch-norm layers)
    ...
    checksum <16 hex digits>

The checksum is BLAKE2b with an 8-byte digest over every byte before the
checksum line. Numbers use 17 significant digits, so a load reproduces the
saved arrays exactly. Scale factors that were never fitted are written as 0.
"""

import hashlib
from pathlib import Path
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ise_denoise.src.errors import ChecksumError, ModelFormatError, VersionError
from ise_denoise.src.neuralnet.network import NetworkModel

MAGIC = "ISEDNN"
FORMAT_VERSION = "1"
_BN_ROWS = ("gamma", "beta", "running_mean", "running_var")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _row(tag: str, values: np.ndarray) -> str:
    return " ".join([tag, *(_fmt(v) for v in values)])


def checksum(payload: bytes) -> str:
    return hashlib.blake2b(payload, digest_size=8).hexdigest()


def dumps(model: NetworkModel) -> str:
    lines = [
        f"{MAGIC} {FORMAT_VERSION}",
        "arch " + " ".join(str(width) for width in model.architecture),
        f"norm_in {_fmt(model.norm_in or 0.0)} norm_out {_fmt(model.norm_out or 0.0)}",
    ]
    for index, layer in enumerate(model.layers):
        lines.extend(_row("W", row) for row in model.weights[index])
        lines.append(_row("b", model.biases[index]))
        if layer.has_batchnorm:
            lines.append(_row("gamma", model.gamma[index]))
            lines.append(_row("beta", model.beta[index]))
            lines.append(_row("running_mean", model.running_mean[index]))
            lines.append(_row("running_var", model.running_var[index]))
    body = "\n".join(lines) + "\n"
    return body + f"checksum {checksum(body.encode('utf-8'))}\n"


def save(model: NetworkModel, path: Path) -> None:
    """Write ``model`` to ``path``; the file is replaced only once fully rendered."""
    path = Path(path)
    text = dumps(model)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)


class _Lines:
    def __init__(self, lines: List[str]):
        self._lines = lines
        self.number = 0

    def next(self, what: str) -> str:
        if self.number >= len(self._lines):
            raise ModelFormatError(f"unexpected end of file, expected {what}", self.number + 1)
        line = self._lines[self.number]
        self.number += 1
        return line

    def __iter__(self) -> Iterator[str]:
        return iter(self._lines[self.number :])


def _floats(parts: List[str], line: int) -> np.ndarray:
    try:
        return np.array([float(part) for part in parts], dtype=np.float64)
    except ValueError:
        raise ModelFormatError("non-numeric value", line) from None


def _tagged(lines: _Lines, tag: str, width: int) -> np.ndarray:
    parts = lines.next(f"a {tag} row").split()
    if not parts or parts[0] != tag:
        raise ModelFormatError(f"expected a {tag} row", lines.number)
    values = _floats(parts[1:], lines.number)
    if values.size != width:
        raise ModelFormatError(
            f"{tag} row has {values.size} values, expected {width}", lines.number
        )
    return values


def _scale(value: float) -> Optional[float]:
    return value if value > 0 else None


def _header(lines: _Lines) -> Tuple[Tuple[int, ...], float, float]:
    magic = lines.next("the file header").split()
    if len(magic) != 2 or magic[0] != MAGIC:
        raise ModelFormatError(f"not a {MAGIC} model file", 1)
    if magic[1] != FORMAT_VERSION:
        raise VersionError(magic[1], FORMAT_VERSION)

    arch = lines.next("the arch line").split()
    try:
        widths = tuple(int(part) for part in arch[1:])
    except ValueError:
        raise ModelFormatError("non-integer layer width", 2) from None
    if not arch or arch[0] != "arch" or len(widths) < 2 or min(widths) < 1:
        raise ModelFormatError("expected 'arch <input> <widths...>'", 2)

    norms = lines.next("the normalization line").split()
    if len(norms) != 4 or norms[0] != "norm_in" or norms[2] != "norm_out":
        raise ModelFormatError("expected 'norm_in <float> norm_out <float>'", 3)
    norm_in, norm_out = _floats([norms[1], norms[3]], 3)
    return widths, float(norm_in), float(norm_out)


def loads(text: str) -> NetworkModel:
    """Parse a model file body; nothing is returned unless every check passes."""
    body, marker, tail = text.rpartition("checksum ")
    lines = _Lines(text.splitlines())
    if not marker or "\n" in tail.strip() or (body and not body.endswith("\n")):
        _header(lines)
        raise ModelFormatError("missing checksum line", len(text.splitlines()))

    widths, norm_in, norm_out = _header(lines)
    model = NetworkModel(widths[0], widths[1:])
    model.norm_in = _scale(norm_in)
    model.norm_out = _scale(norm_out)
    for index, layer in enumerate(model.layers):
        fan_in = model.weights[index].shape[0]
        model.weights[index] = np.stack(
            [_tagged(lines, "W", layer.width) for _ in range(fan_in)]
        )
        model.biases[index] = _tagged(lines, "b", layer.width)
        if layer.has_batchnorm:
            for tag in _BN_ROWS:
                getattr(model, tag)[index] = _tagged(lines, tag, layer.width)
            if np.any(model.running_var[index] <= 0):
                raise ModelFormatError("running_var must be positive", lines.number)

    closing = lines.next("the checksum line").split()
    if len(closing) != 2 or closing[0] != "checksum":
        raise ModelFormatError("expected the checksum line", lines.number)
    if any(line.strip() for line in lines):
        raise ModelFormatError("content after the checksum line", lines.number + 1)
    expected = checksum(body.encode("utf-8"))
    if closing[1].lower() != expected:
        raise ChecksumError(
            f"checksum mismatch: file says {closing[1]}, content hashes to {expected}",
            lines.number,
        )
    return model


def load(path: Path) -> NetworkModel:
    return loads(Path(path).read_text(encoding="utf-8"))
