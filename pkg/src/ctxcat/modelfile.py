"""Line-oriented, checksummed model file.

Layout (UTF-8, ``\\n`` line ends)::

    !format<TAB>ctxcat-model/1
    !<key><TAB><value>          one line per header key, fixed order
    !checksum<TAB>sha256:<hex>  digest of every byte after this line
    <context><TAB><feature><TAB><score><TAB><doc_frequency>

Body records are sorted by (context, feature). Scores use Python's shortest
round-trip float repr, so load(save(m)) == m.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from ctxcat.corpus import TokenConfig
from ctxcat.mining import MiningParams
from ctxcat.training import ContextModel, FeatureScore, FeatureScoreTable

FORMAT_VERSION = "ctxcat-model/1"
_HEADER_KEYS = (
    "format",
    "algorithm",
    "min_support",
    "rare_min_support",
    "relative_support",
    "mis_beta",
    "mis_floor",
    "max_itemset_size",
    "min_token_length",
    "stopwords",
    "contexts",
    "records",
    "checksum",
)


class ModelFormatError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"byte offset {offset}: {message}")
        self.offset = offset


def _check_name(kind: str, name: str) -> None:
    if not name or name.startswith("!") or any(c in name for c in "\t\r\n"):
        raise ValueError(f"{kind} name {name!r} cannot be stored in a model file")


def save_model(model: ContextModel) -> bytes:
    p, tc = model.params, model.token_config
    body = []
    for ctx in sorted(model.contexts):
        _check_name("context", ctx)
        for feature, entry in sorted(model.tables[ctx].entries.items()):
            _check_name("feature", feature)
            body.append(f"{ctx}\t{feature}\t{entry.score!r}\t{entry.doc_frequency}\n")
    body_bytes = "".join(body).encode("utf-8")
    header = [
        ("format", FORMAT_VERSION),
        ("algorithm", p.algorithm),
        ("min_support", repr(p.min_support)),
        ("rare_min_support", repr(p.rare_min_support)),
        ("relative_support", repr(p.relative_support)),
        ("mis_beta", repr(p.mis_beta)),
        ("mis_floor", repr(p.mis_floor)),
        ("max_itemset_size", "none" if p.max_itemset_size is None else str(p.max_itemset_size)),
        ("min_token_length", str(tc.min_length)),
        ("stopwords", " ".join(sorted(tc.stopwords))),
        ("contexts", "\t".join(model.contexts)),
        ("records", str(len(body))),
        ("checksum", "sha256:" + hashlib.sha256(body_bytes).hexdigest()),
    ]
    head = "".join(f"!{k}\t{v}\n" for k, v in header).encode("utf-8")
    return head + body_bytes


def _lines_with_offsets(data: bytes):
    pos = 0
    while pos < len(data):
        end = data.find(b"\n", pos)
        if end < 0:
            raise ModelFormatError("truncated line (missing newline)", pos)
        yield pos, data[pos:end].decode("utf-8")
        pos = end + 1


def _number(text: str, offset: int, kind=float):
    try:
        return kind(text)
    except ValueError:
        raise ModelFormatError(f"bad numeric value {text!r}", offset) from None


def load_model(data: bytes) -> ContextModel:
    try:
        data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFormatError("invalid UTF-8", exc.start) from None
    if not data:
        raise ModelFormatError("empty model file", 0)

    header: dict[str, tuple[str, int]] = {}
    body_start = None
    records = []
    for offset, line in _lines_with_offsets(data):
        if body_start is None and line.startswith("!"):
            key, sep, value = line[1:].partition("\t")
            expected = _HEADER_KEYS[len(header)] if len(header) < len(_HEADER_KEYS) else None
            if not sep or key != expected:
                raise ModelFormatError(f"unexpected header line {key!r} (expected {expected!r})", offset)
            if key == "format" and value != FORMAT_VERSION:
                raise ModelFormatError(f"unsupported format version {value!r}", offset)
            header[key] = (value, offset)
            continue
        if body_start is None:
            if len(header) != len(_HEADER_KEYS):
                raise ModelFormatError(f"incomplete header, missing {_HEADER_KEYS[len(header)]!r}", offset)
            body_start = offset
        fields = line.split("\t")
        if len(fields) != 4:
            raise ModelFormatError(f"expected 4 tab-separated fields, got {len(fields)}", offset)
        records.append((offset, fields))

    if body_start is None:
        if len(header) != len(_HEADER_KEYS):
            raise ModelFormatError(f"incomplete header, missing {_HEADER_KEYS[len(header)]!r}", len(data))
        body_start = len(data)

    def value(key):
        return header[key][0]

    try:
        max_size = value("max_itemset_size")
        params = MiningParams(
            algorithm=value("algorithm"),
            min_support=_number(value("min_support"), header["min_support"][1]),
            rare_min_support=_number(value("rare_min_support"), header["rare_min_support"][1]),
            relative_support=_number(value("relative_support"), header["relative_support"][1]),
            mis_beta=_number(value("mis_beta"), header["mis_beta"][1]),
            mis_floor=_number(value("mis_floor"), header["mis_floor"][1]),
            max_itemset_size=None if max_size == "none" else _number(max_size, header["max_itemset_size"][1], int),
        )
        token_config = TokenConfig(
            min_length=_number(value("min_token_length"), header["min_token_length"][1], int),
            stopwords=frozenset(value("stopwords").split()),
        )
    except ValueError as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"invalid parameters: {exc}", header["algorithm"][1]) from None

    contexts = tuple(value("contexts").split("\t")) if value("contexts") else ()
    if len(set(contexts)) != len(contexts):
        raise ModelFormatError("duplicate context in header", header["contexts"][1])

    entries: dict[str, dict[str, FeatureScore]] = {c: {} for c in contexts}
    prev_key = None
    for offset, (ctx, feature, score_text, df_text) in records:
        if ctx not in entries:
            raise ModelFormatError(f"record for undeclared context {ctx!r}", offset)
        key = (ctx, feature)
        if prev_key is not None and key == prev_key:
            raise ModelFormatError(f"duplicate record ({ctx}, {feature})", offset)
        if prev_key is not None and key < prev_key:
            raise ModelFormatError("records not sorted by (context, feature)", offset)
        prev_key = key
        score = _number(score_text, offset)
        df = _number(df_text, offset, int)
        try:
            entries[ctx][feature] = FeatureScore(score, df)
        except ValueError as exc:
            raise ModelFormatError(str(exc), offset) from None

    n_records = _number(value("records"), header["records"][1], int)
    if n_records != len(records):
        raise ModelFormatError(f"expected {n_records} records, found {len(records)}", len(data))
    digest = "sha256:" + hashlib.sha256(data[body_start:]).hexdigest()
    if digest != value("checksum"):
        raise ModelFormatError("body checksum mismatch", body_start)

    tables = {c: FeatureScoreTable(c, entries[c]) for c in contexts}
    return ContextModel(contexts, tables, params, token_config)


def write_model(path: str | Path, model: ContextModel) -> None:
    """Write atomically: a temp file in the target directory, then rename."""
    path = Path(path)
    data = save_model(model)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def read_model(path: str | Path) -> ContextModel:
    return load_model(Path(path).read_bytes())
