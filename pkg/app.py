from __future__ import annotations

import sys
from pathlib import Path
from typing import TextIO

from ideal_quasi.closed_forms import (
    chi_quasi_ideal,
    effective_lattice,
    lattice_matrix,
    oracle_quasi_ideal,
    oracle_shifted_count,
)
from ideal_quasi.config import Settings, resolve_cache_db_path
from ideal_quasi.count_cache import CountCache
from ideal_quasi.debug_logger import log_debug
from ideal_quasi.errors import MismatchError, UnsupportedTypeError
from ideal_quasi.ideals import Ideal, dual_partition, enumerate_ideals, signed_graph
from ideal_quasi.json_store import write_json_file
from ideal_quasi.mixins import LayoutTablesMixin, ParsingMixin, ReportMixin, StatusTimerMixin
from ideal_quasi.modular_counting import count_complement
from ideal_quasi.quasipoly import QuasiPolynomial, characteristic_polynomial, lcm_period, toric_polynomial
from ideal_quasi.root_systems import coefficient_matrix
from ideal_quasi.runtime_constants import (
    BASIS_ORTHONORMAL,
    BASIS_SIMPLE,
    EXIT_MISMATCH,
    EXIT_OK,
    FORMAT_JSON,
    LATTICE_S,
    METHOD_BOTH,
    METHOD_CLOSED,
    METHOD_ORACLE,
    RS_TYPE_A,
    TABLE_ALL,
    TABLE_WORKED_EXAMPLES,
)
from ideal_quasi.verification import CheckResult, run_verification


# Class: QuasiApp - Orchestre les commandes: systèmes, idéaux, comptages, quasi-polynômes et vérifications.
class QuasiApp(
    ParsingMixin,
    ReportMixin,
    StatusTimerMixin,
    LayoutTablesMixin,
):
    # Method: __init__ - Prépare les réglages, les flux de sortie et le cache optionnel.
    def __init__(
        self,
        settings: Settings | None = None,
        *,
        out: TextIO | None = None,
        err: TextIO | None = None,
        show_timings: bool = False,
        clear_cache: bool = False,
    ) -> None:
        self.settings = settings or Settings()
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.show_timings = show_timings
        self.cache: CountCache | None = None
        if self.settings.count_cache:
            self.cache = CountCache(
                resolve_cache_db_path(self.settings), max_entries=self.settings.cache_max_entries
            )
            if clear_cache:
                self.cache.clear()

    # Method: cmd_roots - Liste les racines positives avec hauteur et colonnes S et T.
    def cmd_roots(self, rs_type: str, rank: int, *, fmt: str = FORMAT_JSON) -> int:
        system = self._parse_system(rs_type, rank)
        records = []
        for root in system.roots:
            records.append(
                {
                    "root": root.literal,
                    "kind": root.kind,
                    "height": root.height,
                    "S": list(coefficient_matrix([root], BASIS_SIMPLE).column(0)),
                    "T": list(coefficient_matrix([root], BASIS_ORTHONORMAL).column(0)),
                }
            )
        if fmt == FORMAT_JSON:
            self._emit_json({"system": system.label, "roots": records})
        else:
            self._emit_tsv(
                ["root", "height", "S", "T"],
                ([r["root"], r["height"], self._join_ints(r["S"]), self._join_ints(r["T"])] for r in records),
            )
        return EXIT_OK

    # Method: cmd_ideals - Énumère les idéaux avec DP (et SG hors type A).
    def cmd_ideals(self, rs_type: str, rank: int, *, fmt: str = FORMAT_JSON) -> int:
        system = self._parse_system(rs_type, rank)
        records = []
        with self._status_timer(f"ideals {system.label}"):
            for ideal in enumerate_ideals(system, guard=self.settings.ideal_guard):
                record = {**self._ideal_payload(ideal), "DP": list(dual_partition(ideal).d)}
                if system.rs_type != RS_TYPE_A:
                    record["SG"] = list(signed_graph(ideal).p)
                records.append(record)
        if fmt == FORMAT_JSON:
            self._emit_json({"system": system.label, "count": len(records), "ideals": records})
        else:
            self._emit_tsv(
                ["ideal", "size", "DP", "SG"],
                (
                    [r["ideal"], r["size"], self._join_ints(r["DP"]), self._join_ints(r.get("SG", ()))]
                    for r in records
                ),
            )
        return EXIT_OK

    # Method: cmd_count - Comptage exact en un ou plusieurs q (option: décalage g·S).
    def cmd_count(
        self,
        rs_type: str,
        rank: int,
        *,
        ideal_spec: str | None,
        lattice: str,
        q_values: str,
        shifted: bool = False,
        fmt: str = FORMAT_JSON,
    ) -> int:
        ideal = self._parse_ideal(self._parse_system(rs_type, rank), ideal_spec)
        lattice = effective_lattice(ideal, lattice)
        qs = self._parse_q_values(q_values)
        matrix = lattice_matrix(ideal, lattice)
        counts = []
        with self._status_timer(f"count {ideal}"):
            for q in qs:
                if shifted:
                    if ideal.system.rs_type == RS_TYPE_A:
                        raise UnsupportedTypeError("Le comptage décalé n'a pas de sens en type A.")
                    count = oracle_shifted_count(ideal, q, settings=self.settings, cache=self.cache)
                else:
                    count = count_complement(matrix, q, settings=self.settings, cache=self.cache)
                counts.append({"q": q, "count": count})
        if fmt == FORMAT_JSON:
            self._emit_json(
                {**self._ideal_payload(ideal), "lattice": "F" if shifted else lattice, "counts": counts}
            )
        else:
            self._emit_tsv(["q", "count"], ([c["q"], c["count"]] for c in counts))
        return EXIT_OK

    def _quasi_for(self, ideal: Ideal, lattice: str, method: str) -> tuple[QuasiPolynomial, QuasiPolynomial | None]:
        if method == METHOD_ORACLE:
            return oracle_quasi_ideal(ideal, lattice, settings=self.settings, cache=self.cache), None
        if method == METHOD_CLOSED:
            return chi_quasi_ideal(ideal, lattice, settings=self.settings, cache=self.cache), None
        closed = chi_quasi_ideal(ideal, lattice, settings=self.settings, cache=self.cache, cross_check=False)
        oracle = oracle_quasi_ideal(ideal, lattice, settings=self.settings, cache=self.cache)
        return closed, oracle

    # Method: cmd_chi - Quasi-polynôme caractéristique (oracle, forme fermée ou les deux).
    def cmd_chi(
        self,
        rs_type: str,
        rank: int,
        *,
        ideal_spec: str | None,
        lattice: str = LATTICE_S,
        method: str = METHOD_BOTH,
    ) -> int:
        ideal = self._parse_ideal(self._parse_system(rs_type, rank), ideal_spec)
        lattice = effective_lattice(ideal, lattice)
        with self._status_timer(f"chi {ideal} {lattice} {method}"):
            qp, oracle = self._quasi_for(ideal, lattice, method)
        dual = dual_partition(ideal).d
        # f^1 se factorise sur DP: MismatchError sinon.
        first = characteristic_polynomial(qp, dual_partition=dual)
        payload = {
            **self._ideal_payload(ideal),
            "lattice": lattice,
            "method": method,
            "DP": list(dual),
            "characteristic": self._polynomial_payload(first),
            "quasi_polynomial": self._quasi_payload(qp),
        }
        if method != METHOD_BOTH:
            self._emit_json(payload)
            return EXIT_OK
        match = oracle is not None and oracle.normalized() == qp.normalized()
        payload["oracle"] = self._quasi_payload(oracle) if oracle is not None else None
        payload["match"] = match
        self._emit_json(payload)
        if not match:
            log_debug(f"cmd_chi mismatch {ideal} lattice={lattice}")
            return EXIT_MISMATCH
        return EXIT_OK

    # Method: cmd_toric - Dernier constituant (polynôme caractéristique torique).
    def cmd_toric(
        self,
        rs_type: str,
        rank: int,
        *,
        ideal_spec: str | None,
        lattice: str = LATTICE_S,
        method: str = METHOD_CLOSED,
    ) -> int:
        ideal = self._parse_ideal(self._parse_system(rs_type, rank), ideal_spec)
        lattice = effective_lattice(ideal, lattice)
        with self._status_timer(f"toric {ideal} {lattice}"):
            qp, oracle = self._quasi_for(ideal, lattice, method)
        if oracle is not None and oracle.normalized() != qp.normalized():
            raise MismatchError(f"Forme fermée et oracle divergent pour {ideal} (réseau {lattice}).")
        poly = toric_polynomial(qp)
        self._emit_json(
            {
                **self._ideal_payload(ideal),
                "lattice": lattice,
                "residue": qp.period,
                **self._polynomial_payload(poly),
            }
        )
        return EXIT_OK

    # Method: cmd_period - Période minimale interpolée et période LCM (forme de Smith).
    def cmd_period(
        self,
        rs_type: str,
        rank: int,
        *,
        ideal_spec: str | None,
        lattice: str = LATTICE_S,
        subset_cap: int | None = None,
    ) -> int:
        ideal = self._parse_ideal(self._parse_system(rs_type, rank), ideal_spec)
        lattice = effective_lattice(ideal, lattice)
        with self._status_timer(f"period {ideal} {lattice}"):
            minimum = oracle_quasi_ideal(ideal, lattice, settings=self.settings, cache=self.cache).normalized()
            lcm = lcm_period(lattice_matrix(ideal, lattice), subset_cap, subset_budget=self.settings.subset_budget)
        self._emit_json(
            {
                **self._ideal_payload(ideal),
                "lattice": lattice,
                "minimum_period": minimum.period,
                "lcm_period": lcm.value,
                "lower_bound": lcm.lower_bound,
            }
        )
        return EXIT_OK

    # Method: cmd_verify - Exécute la batterie de contrôles sur tous les idéaux jusqu'au rang donné.
    def cmd_verify(self, rs_type: str, rank_max: int, *, output: str | None = None) -> int:
        parsed_type = self._parse_rs_type(rs_type)
        parsed_rank = self._parse_rank(rank_max)

        def on_result(result: CheckResult) -> None:
            self._emit_tsv([], [[result.status, result.name, result.subject, result.detail]])

        with self._status_timer(f"verify {parsed_type} {parsed_rank}"):
            report = run_verification(
                parsed_type, parsed_rank, settings=self.settings, cache=self.cache, on_result=on_result
            )
        self._emit(("PASS " if report.passed else "FAIL ") + report.summary())
        if output:
            write_json_file(
                Path(output),
                {
                    "type": report.rs_type,
                    "rank_max": report.rank_max,
                    "ideals": report.ideals_seen,
                    "passed": report.passed,
                    "results": [
                        {"status": r.status, "check": r.name, "ideal": r.subject, "detail": r.detail}
                        for r in report.results
                    ],
                },
            )
        return EXIT_OK if report.passed else EXIT_MISMATCH

    # Method: cmd_tables - Dispositions TSV par hauteur d'un idéal, ou des exemples traités (`all`, `paper`).
    def cmd_tables(
        self,
        rs_type: str | None,
        rank: int | None,
        *,
        ideal_spec: str | None,
        layout: str = TABLE_ALL,
    ) -> int:
        if layout in TABLE_WORKED_EXAMPLES:
            sections = self._worked_example_sections()
        else:
            ideal = self._parse_ideal(self._parse_system(rs_type, rank), ideal_spec)
            sections = [(str(ideal), self._layout_rows(ideal, layout))]
        for index, (title, rows) in enumerate(sections):
            if index:
                self._emit("")
            self._emit(f"# {title}")
            self._emit_tsv([], rows)
        return EXIT_OK
