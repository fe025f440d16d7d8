from __future__ import annotations

from typing import Any, Iterable, Sequence, TextIO

from ideal_quasi.ideals import Ideal
from ideal_quasi.json_store import dump_json_text
from ideal_quasi.quasipoly import IntegerPolynomial, QuasiPolynomial


# Class: ReportMixin - Écrit les résultats sur la sortie standard (JSON ou TSV, ordre stable).
class ReportMixin:
    out: TextIO

    def _emit(self, text: str) -> None:
        print(text, file=self.out)

    def _emit_json(self, payload: Any) -> None:
        self._emit(dump_json_text(payload))

    # Method: _emit_tsv - Une ligne d'en-tête puis une ligne par enregistrement.
    def _emit_tsv(self, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
        if header:
            self._emit("\t".join(header))
        for row in rows:
            self._emit("\t".join(str(cell) for cell in row))

    def _ideal_payload(self, ideal: Ideal) -> dict[str, Any]:
        return {"system": ideal.system.label, "ideal": ideal.spec_text, "size": ideal.size}

    def _polynomial_payload(self, poly: IntegerPolynomial) -> dict[str, Any]:
        return {"coeffs": list(poly.coeffs), "factored": poly.factored_text()}

    # Method: _quasi_payload - JSON du quasi-polynôme enrichi des formes factorisées par constituant.
    def _quasi_payload(self, qp: QuasiPolynomial) -> dict[str, Any]:
        payload = qp.to_json()
        for item, poly in zip(payload["constituents"], qp.constituents):
            item["factored"] = poly.factored_text()
        return payload

    def _join_ints(self, values: Iterable[int]) -> str:
        return ",".join(str(v) for v in values)
