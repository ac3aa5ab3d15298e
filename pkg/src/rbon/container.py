"""Self-describing array container for models and datasets.

The file is a plain uncompressed zip holding one .npy member per array plus a
JSON metadata member, so numpy.load can open it as an ordinary npz. Members
are written in sorted order with a fixed timestamp, making the bytes a pure
function of the content; generation commands can therefore promise
byte-identical reruns.
"""

import io
import json
import zipfile

import numpy as np

FORMAT_VERSION = 1
_META_KEY = "__meta__"
_FIXED_DATE = (1980, 1, 1, 0, 0, 0)


class CorruptFileError(Exception):
    """The file is unreadable or missing required members."""


class FormatVersionError(Exception):
    """The file declares a format version this code does not understand."""


def _write_member(zf, name, array):
    buf = io.BytesIO()
    np.lib.format.write_array(buf, np.ascontiguousarray(array))
    info = zipfile.ZipInfo(name + ".npy", date_time=_FIXED_DATE)
    info.compress_type = zipfile.ZIP_STORED
    zf.writestr(info, buf.getvalue())


def save_container(path, arrays, meta):
    """Write arrays plus metadata; meta must be JSON-serializable."""
    meta = dict(meta)
    meta["format_version"] = meta.get("format_version", FORMAT_VERSION)
    meta_bytes = json.dumps(meta, sort_keys=True).encode()
    with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_STORED) as zf:
        _write_member(zf, _META_KEY, np.frombuffer(meta_bytes, dtype=np.uint8))
        for name in sorted(arrays):
            if name == _META_KEY:
                raise ValueError(f"array name {_META_KEY!r} is reserved")
            _write_member(zf, name, arrays[name])


def load_container(path, expected_kind=None):
    """Read back (arrays, meta); validates integrity and format version."""
    try:
        with np.load(path) as data:
            if _META_KEY not in data:
                raise CorruptFileError(f"{path}: missing metadata member")
            meta = json.loads(bytes(data[_META_KEY]).decode())
            arrays = {k: data[k] for k in data.files if k != _META_KEY}
    except FileNotFoundError:
        raise  # a missing file is not a corrupt one
    except (OSError, ValueError, zipfile.BadZipFile, json.JSONDecodeError) as exc:
        raise CorruptFileError(f"{path}: unreadable container ({exc})") from exc
    version = meta.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatVersionError(
            f"{path}: format version {version}, this build reads {FORMAT_VERSION}"
        )
    if expected_kind is not None and meta.get("kind") != expected_kind:
        raise CorruptFileError(
            f"{path}: expected a {expected_kind} file, found {meta.get('kind')!r}"
        )
    return arrays, meta
