import hashlib
import json
import logging
import typing

from .exceptions import ImproperlyConfigured
from .exceptions import PathDepthError
from .utils import get_filesystem

log = logging.getLogger(__name__)


def cache_key(kind: str, payload: dict, settings_fingerprint: dict) -> str:
    """sha256 over the canonical JSON of (computation kind, inputs, engine settings)."""
    canonical = json.dumps(
        {"kind": kind, "input": payload, "settings": settings_fingerprint},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode()).hexdigest()


class ResultCache:
    """Content-addressed JSON results on any fsspec filesystem.

    settings:
    - storage_config: keyword arguments of :func:`pathdepth.utils.get_filesystem`
      (``url``, or ``fs``/``protocol`` with ``relative_to_path``)
    - allow_overwrite: replace an existing entry on save (default True)
    - paranoid: run the ``verify`` callback of :meth:`load` on every hit (default False)

    example::

        cache = ResultCache(storage_config={"url": "memory://pathdepth-cache"})
        key = cache_key("depth", {"ideal": "ring n=3\\nx1*x2\\nx2*x3\\n"}, settings.fingerprint())
        if (entry := cache.load(key, required=("depth",))) is None:
            cache.save(key, {"depth": 1})

    Entries that cannot be parsed are logged and treated as missing, never trusted.
    """

    def __init__(self, **settings):
        settings_cp = settings.copy()
        self.allow_overwrite = settings_cp.pop("allow_overwrite", True)
        self.paranoid = settings_cp.pop("paranoid", False)

        if "storage_config" not in settings_cp:
            raise ImproperlyConfigured("storage_config is required")
        storage_config = settings_cp.pop("storage_config")
        self.filesystem = get_filesystem(**storage_config)

        if settings_cp:
            raise ImproperlyConfigured(f"Unknown setting(s): {sorted(settings_cp)}")

    @classmethod
    def from_location(cls, location: str | None, **settings) -> "ResultCache | None":
        """A cache rooted at ``location`` (path or fsspec URL); None disables caching."""
        if not location:
            return None
        return cls(storage_config={"url": location}, **settings)

    @staticmethod
    def path(key: str) -> str:
        return f"{key[:2]}/{key}.json"

    def exists(self, key: str) -> bool:
        return self.filesystem.exists(self.path(key))

    def delete(self, key: str):
        return self.filesystem.rm(self.path(key))

    def load(
        self,
        key: str,
        required: typing.Iterable[str] = (),
        verify: typing.Callable[[dict], bool] | None = None,
    ) -> dict | None:
        """The value stored under ``key``, or None on a miss.

        :param required: keys the value must have; an entry without them is a miss
        :param verify: re-check of a hit, run only on a paranoid cache; a false result or an error is a miss
        """
        name = self.path(key)
        if not self.filesystem.exists(name):
            log.debug("cache miss %s", key)
            return None
        try:
            with self.filesystem.open(name, "rb") as f:
                entry = json.loads(f.read().decode())
            if not isinstance(entry, dict) or entry.get("key") != key or not isinstance(entry.get("value"), dict):
                raise ValueError("entry does not match its key")
        except (ValueError, UnicodeDecodeError) as e:
            log.warning("ignoring corrupt cache entry %s: %s", name, e)
            return None
        value = entry["value"]
        missing = sorted(set(required) - set(value))
        if missing:
            log.warning("ignoring cache entry %s without %s", name, ", ".join(missing))
            return None
        if self.paranoid and verify is not None:
            try:
                ok = verify(value)
            except (PathDepthError, AttributeError, KeyError, TypeError, ValueError) as e:
                log.warning("cache entry %s cannot be re-verified: %s", name, e)
                return None
            if not ok:
                log.warning("cache entry %s failed re-verification", name)
                return None
        log.debug("cache hit %s", key)
        return value

    def save(self, key: str, value: dict) -> str:
        name = self.path(key)
        if self.exists(key):
            if not self.allow_overwrite:
                return name
            self.delete(key)
        parent = name.rsplit("/", 1)[0]
        self.filesystem.makedirs(parent, exist_ok=True)
        with self.filesystem.open(name, "wb") as f:
            f.write(json.dumps({"key": key, "value": value}, sort_keys=True).encode())
        return name
