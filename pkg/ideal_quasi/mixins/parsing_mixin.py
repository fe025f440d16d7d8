from __future__ import annotations

from ideal_quasi.errors import IdealSpecError, RankRangeError
from ideal_quasi.ideals import Ideal, parse_ideal_spec
from ideal_quasi.root_systems import PositiveSystem, build_positive_system
from ideal_quasi.runtime_constants import RS_TYPES


# Class: ParsingMixin - Convertit les arguments de la ligne de commande en objets du domaine.
class ParsingMixin:
    # Method: _safe_int - Convertit une valeur en entier, 0 si impossible.
    def _safe_int(self, value: object) -> int:
        try:
            return int(value)  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return 0

    # Method: _parse_rs_type - Normalise le type (a, B, ...) et refuse les types exceptionnels.
    def _parse_rs_type(self, raw: object) -> str:
        text = str(raw or "").strip().upper()
        if text not in RS_TYPES:
            raise IdealSpecError(f"Type de système inconnu: '{raw}' (attendu: {', '.join(RS_TYPES)}).")
        return text

    def _parse_rank(self, raw: object) -> int:
        rank = self._safe_int(raw)
        if rank < 1:
            raise RankRangeError(f"Rang invalide: '{raw}'.")
        return rank

    # Method: _parse_system - Construit Φ⁺ à partir du type et du rang saisis.
    def _parse_system(self, rs_type: object, rank: object) -> PositiveSystem:
        return build_positive_system(self._parse_rs_type(rs_type), self._parse_rank(rank))

    # Method: _parse_ideal - Lit la grammaire `ht<=H` ou `gen:...`; absent signifie Φ⁺ entier.
    def _parse_ideal(self, system: PositiveSystem, spec: str | None) -> Ideal:
        if spec is None:
            return Ideal(system, system.full_mask)
        return parse_ideal_spec(system, spec)

    # Method: _parse_q_values - Lit une liste "2,4,6" ou une plage "1-10".
    def _parse_q_values(self, raw: str) -> tuple[int, ...]:
        text = str(raw or "").replace(" ", "")
        values: list[int] = []
        for part in filter(None, text.split(",")):
            lo, sep, hi = part.partition("-")
            try:
                if sep:
                    values.extend(range(int(lo), int(hi) + 1))
                else:
                    values.append(int(part))
            except ValueError as exc:
                raise IdealSpecError(f"Valeur de q invalide: '{part}'.") from exc
        if not values or min(values) < 1:
            raise IdealSpecError(f"Liste de q invalide: '{raw}' (entiers >= 1 attendus).")
        return tuple(values)
