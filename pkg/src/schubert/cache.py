"""Content-addressed disk cache for deterministic computations.

Every entry is a JSON file named by the sha256 of its canonical key; the file
stores the key alongside the value so entries are self-describing and
verifiable. Writes go through a temp file and an atomic rename, so concurrent
writers of the same (deterministic) entry are idempotent.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

ENV_CACHE_DIR = "SCHUBERT_CACHE_DIR"


class CacheError(RuntimeError):
    pass


def default_cache_dir() -> str | None:
    return os.environ.get(ENV_CACHE_DIR)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class DiskCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, digest: str) -> str:
        return os.path.join(self.directory, digest + ".json")

    @staticmethod
    def digest_of(key: dict) -> str:
        return hashlib.sha256(canonical_json(key).encode()).hexdigest()

    def load(self, key: dict):
        digest = self.digest_of(key)
        path = self._path(digest)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheError(f"corrupt cache entry {path}: {exc}") from exc
        if self.digest_of(data.get("key", {})) != digest:
            raise CacheError(f"cache entry {path} does not match its key hash")
        return data["value"]

    def store(self, key: dict, value) -> None:
        digest = self.digest_of(key)
        path = self._path(digest)
        payload = canonical_json({"key": key, "value": value})
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)

    def entries(self) -> list[dict]:
        out = []
        for name in sorted(os.listdir(self.directory)):
            if not name.endswith(".json"):
                continue
            path = os.path.join(self.directory, name)
            try:
                with open(path) as fh:
                    data = json.load(fh)
                key = data["key"]
                ok = self.digest_of(key) == name[: -len(".json")]
            except (OSError, json.JSONDecodeError, KeyError):
                key, ok = None, False
            out.append({"file": name, "key": key, "intact": ok})
        return out

    def purge(self) -> int:
        count = 0
        for name in os.listdir(self.directory):
            if name.endswith(".json") or name.endswith(".tmp"):
                os.unlink(os.path.join(self.directory, name))
                count += 1
        return count

    # -- typed entries used by the engine -----------------------------------

    @staticmethod
    def _engine_key(engine) -> dict:
        t = engine.table
        return {
            "type": t.rs.type_label,
            "rank": t.rs.rank,
            "nodes": list(t.nodes),
            "functional": list(engine.functional),
        }

    def product_key(self, engine, uid: int, vid: int) -> dict:
        t = engine.table
        return dict(
            self._engine_key(engine),
            kind="product",
            u=list(t.reps[uid].word),
            v=list(t.reps[vid].word),
        )

    def monomial_key(self, engine, binding, exponents) -> dict:
        t = engine.table
        return dict(
            self._engine_key(engine),
            kind="monomial",
            generators=[list(t.reps[r].word) for r in binding.rep_ids],
            exponents=list(exponents),
        )

    def load_product(self, engine, uid, vid):
        value = self.load(self.product_key(engine, uid, vid))
        return None if value is None else _combo_from_json(engine.table, value)

    def store_product(self, engine, uid, vid, combo):
        self.store(
            self.product_key(engine, uid, vid),
            {"degree": combo.degree, "terms": combo.to_json()},
        )

    def load_monomial(self, engine, binding, exponents):
        value = self.load(self.monomial_key(engine, binding, exponents))
        return None if value is None else _combo_from_json(engine.table, value)

    def store_monomial(self, engine, binding, exponents, combo):
        self.store(
            self.monomial_key(engine, binding, exponents),
            {"degree": combo.degree, "terms": combo.to_json()},
        )

    def table_key(self, rs, nodes) -> dict:
        return {
            "kind": "cosets",
            "type": rs.type_label,
            "rank": rs.rank,
            "nodes": sorted(nodes),
        }

    def verify(self, sample: int = 3) -> list[dict]:
        """Recompute a sample of entries and compare against stored values."""
        from .cartan import root_system
        from .cosets import enumerate_cosets, table_to_json
        from .engine import Engine, make_binding

        report = []
        entries = [e for e in self.entries()]
        picked = entries[:: max(1, len(entries) // sample)] if entries else []
        for entry in picked:
            status = {"file": entry["file"], "ok": False, "reason": ""}
            if not entry["intact"]:
                status["reason"] = "corrupt entry"
                report.append(status)
                continue
            key = entry["key"]
            try:
                value = self.load(key)
                rs = root_system(key["type"], key["rank"])
                table = enumerate_cosets(rs, tuple(key["nodes"]))
                if key["kind"] == "cosets":
                    fresh = table_to_json(table)
                elif key["kind"] in ("product", "monomial"):
                    engine = Engine(table, functional=tuple(key["functional"]))
                    if key["kind"] == "product":
                        combo = engine.multiply(
                            table.id_of_word(key["u"]), table.id_of_word(key["v"])
                        )
                    else:
                        binding = make_binding(
                            table,
                            [(f"g{i}", list(w)) for i, w in enumerate(key["generators"])],
                        )
                        combo = engine.expand_monomial(binding, key["exponents"])
                    fresh = {"degree": combo.degree, "terms": combo.to_json()}
                else:
                    status["reason"] = f"unknown kind {key['kind']}"
                    report.append(status)
                    continue
                if fresh == value:
                    status["ok"] = True
                else:
                    status["reason"] = "stored value differs from recomputation"
            except Exception as exc:  # report, never silently reuse
                status["reason"] = f"{type(exc).__name__}: {exc}"
            report.append(status)
        return report


def _combo_from_json(table, data):
    from .engine import SchubertCombination

    terms = {}
    for item in data["terms"]:
        rid = table.id_of(item["degree"], item["index"])
        terms[rid] = item["coeff"]
    return SchubertCombination(table, data["degree"], terms)
