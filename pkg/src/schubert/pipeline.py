"""Lazily assembled computation stack for one configuration.

Ties together the coset table, product engine, circle-bundle report and ring
presentation, with optional disk caching of tables and products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cache import DiskCache
from .cartan import Preset, RootSystem, resolve_preset, root_system
from .cosets import CosetTable, enumerate_cosets, table_from_json, table_to_json
from .engine import Engine
from .gysin import GysinReport, build_gysin
from .presentation import Presentation, schubert_presentation


@dataclass
class Pipeline:
    rs: RootSystem
    nodes: tuple[int, ...]
    name: str = ""
    generator_hints: tuple = ()
    cache: DiskCache | None = None
    jobs: int = 1
    check_products: bool = False
    _table: CosetTable | None = field(default=None, repr=False)
    _engine: Engine | None = field(default=None, repr=False)
    _report: GysinReport | None = field(default=None, repr=False)
    _presentation: Presentation | None = field(default=None, repr=False)

    @classmethod
    def for_preset(cls, name: str, cache=None, jobs: int = 1) -> "Pipeline":
        p = resolve_preset(name)
        return cls(
            rs=p.root_system(),
            nodes=p.nodes,
            name=p.name,
            generator_hints=p.generator_words,
            cache=cache,
            jobs=jobs,
        )

    @classmethod
    def for_type(cls, type_label: str, rank: int, nodes, cache=None, jobs: int = 1) -> "Pipeline":
        return cls(
            rs=root_system(type_label, rank),
            nodes=tuple(sorted(set(nodes))),
            name=f"{type_label.upper()}{rank}/K{','.join(map(str, sorted(set(nodes))))}",
            cache=cache,
            jobs=jobs,
        )

    def table(self, max_length: int | None = None) -> CosetTable:
        if max_length is not None:
            return enumerate_cosets(self.rs, self.nodes, max_length=max_length)
        if self._table is None:
            if self.cache is not None:
                key = self.cache.table_key(self.rs, self.nodes)
                stored = self.cache.load(key)
                if stored is not None:
                    self._table = table_from_json(stored, self.rs)
                else:
                    self._table = enumerate_cosets(self.rs, self.nodes)
                    self.cache.store(key, table_to_json(self._table))
            else:
                self._table = enumerate_cosets(self.rs, self.nodes)
        return self._table

    def engine(self) -> Engine:
        if self._engine is None:
            self._engine = Engine(self.table(), cache=self.cache)
        return self._engine

    def gysin(self) -> GysinReport:
        if self._report is None:
            self._report = build_gysin(
                self.engine(),
                check_products=self.check_products,
                generator_hints=self.generator_hints,
                jobs=self.jobs,
            )
        return self._report

    def presentation(self) -> Presentation:
        if self._presentation is None:
            self._presentation = schubert_presentation(
                self.engine(), report=self.gysin(), name=self.name
            )
        return self._presentation
