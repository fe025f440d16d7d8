from __future__ import annotations

from typing import Callable

from ideal_quasi.closed_forms import d_even_summands
from ideal_quasi.errors import DomainError
from ideal_quasi.ideals import (
    Ideal,
    b_partition,
    dual_partition,
    parse_ideal_spec,
    signed_graph,
    strip_loops,
)
from ideal_quasi.root_systems import Root, build_positive_system
from ideal_quasi.runtime_constants import (
    KIND_DIFF,
    KIND_SHORT,
    RS_TYPE_B,
    RS_TYPE_C,
    RS_TYPE_D,
    TABLE_B_PARTITION,
    TABLE_DERIVED,
    TABLE_HEIGHTS,
    TABLE_SIGNED,
)

# Exemples traités par `--table all`: (titre, type, rang, idéal, disposition).
WORKED_EXAMPLES = (
    ("B5 ht<=7", RS_TYPE_B, 5, "ht<=7", TABLE_HEIGHTS),
    ("B5 ht<=7 B-partition", RS_TYPE_B, 5, "ht<=7", TABLE_B_PARTITION),
    ("C5 gen:e1-e5,e2+e3", RS_TYPE_C, 5, "gen:e1-e5,e2+e3", TABLE_HEIGHTS),
    ("D5 ht<=6 SG", RS_TYPE_D, 5, "ht<=6", TABLE_SIGNED),
    ("D5 ht<=6 K/U", RS_TYPE_D, 5, "ht<=6", TABLE_DERIVED),
)


# Class: LayoutTablesMixin - Dispositions TSV par hauteur des idéaux (cellules étiquetées).
class LayoutTablesMixin:
    def _height_rows(self, ideal: Ideal, tag: Callable[[Root], str]) -> list[list[str]]:
        by_height: dict[int, list[Root]] = {}
        for root in ideal.system.roots:
            by_height.setdefault(root.height, []).append(root)
        rows = []
        for height in sorted(by_height, reverse=True):
            cells = [root.literal + (tag(root) if root in ideal else "") for root in by_height[height]]
            rows.append([str(height), *cells])
        return rows

    # Method: _layout_heights - Racines par hauteur décroissante; les membres portent '*', puis DP.
    def _layout_heights(self, ideal: Ideal) -> list[list[str]]:
        rows = self._height_rows(ideal, lambda root: "*")
        rows.append(["DP", *(str(d) for d in dual_partition(ideal).d)])
        return rows

    # Method: _layout_b_partition - Membres étiquetés :0 (boucle), :- et :+ ; idem pour J dans D_ℓ.
    def _layout_b_partition(self, ideal: Ideal) -> list[list[str]]:
        parts = b_partition(ideal)
        loops, minus = set(parts.loops), set(parts.minus)

        def tag(root: Root) -> str:
            return ":0" if root in loops else ":-" if root in minus else ":+"

        rows = self._height_rows(ideal, tag)
        rows.append(["DP", *(str(d) for d in dual_partition(ideal).d)])
        if ideal.has(KIND_SHORT, 1):
            stripped = strip_loops(ideal)
            rows.append([f"J ({stripped.system.label})"])
            rows.extend(self._height_rows(stripped, lambda root: ":-" if root.kind == KIND_DIFF else ":+"))
            rows.append(["DP", *(str(d) for d in dual_partition(stripped).d)])
        return rows

    # Method: _layout_signed - Chaque membre indique la ligne p_i qu'il alimente, puis SG.
    def _layout_signed(self, ideal: Ideal) -> list[list[str]]:
        rows = self._height_rows(ideal, lambda root: f":p{root.i}")
        rows.append(["SG", *(str(p) for p in signed_graph(ideal).p)])
        return rows

    # Method: _layout_derived - Idéaux K et U_k: DP et racines du polynôme pair sur T.
    def _layout_derived(self, ideal: Ideal) -> list[list[str]]:
        rows = [["ideal", "system", "DP", "roots"]]
        for summand in d_even_summands(ideal):
            rows.append(
                [
                    summand.label,
                    summand.ideal.system.label,
                    ",".join(str(d) for d in dual_partition(summand.ideal).d),
                    ",".join(str(r) for r in sorted(summand.roots, reverse=True)),
                ]
            )
        return rows

    def _layout_rows(self, ideal: Ideal, layout: str) -> list[list[str]]:
        builders = {
            TABLE_HEIGHTS: self._layout_heights,
            TABLE_B_PARTITION: self._layout_b_partition,
            TABLE_SIGNED: self._layout_signed,
            TABLE_DERIVED: self._layout_derived,
        }
        builder = builders.get(layout)
        if builder is None:
            raise DomainError(f"Disposition inconnue: '{layout}'.")
        return builder(ideal)

    # Method: _worked_example_sections - Sections (titre, lignes) reproduites par `--table all`.
    def _worked_example_sections(self) -> list[tuple[str, list[list[str]]]]:
        sections = []
        for title, rs_type, rank, spec, layout in WORKED_EXAMPLES:
            system = build_positive_system(rs_type, rank)
            ideal = parse_ideal_spec(system, spec)
            sections.append((title, self._layout_rows(ideal, layout)))
        return sections

