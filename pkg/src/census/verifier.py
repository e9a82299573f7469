"""Certifica que form_to_pair es una biyección entre los dos censos."""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from census.orbits import DEFAULT_CENSUS_BOUND, OrbitCensus, enumerate_form_orbits, enumerate_pair_classes
from common.algebra import form_to_pair
from common.forms import Flavor, make_form
from common.rings import RingContext, make_context

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BijectionReport:
    ring: str
    flavor: Flavor
    form_states: int
    pair_states: int
    form_orbits: int
    pair_classes: int
    matches: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]
    discrepancies: Tuple[Dict[str, Any], ...]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not self.discrepancies


def _pair_values(pair) -> Tuple[int, ...]:
    return (pair.algebra.q.value, pair.algebra.r.value, *(e.value for e in pair.T.entries()))


def match_censuses(forms: OrbitCensus, pairs: OrbitCensus) -> Tuple[List[Tuple[int, int]], List[Dict[str, Any]]]:
    """
    Empareja órbitas de formas con clases de pares recorriendo todas las formas.

    Parámetros:
        forms: censo de formas sobre Z/n.
        pairs: censo de pares del mismo anillo y sabor.

    Retorna:
        Las parejas (órbita de formas, clase de pares) y los fallos encontrados.
    """
    ctx = make_context(forms.ring)
    n = ctx.modulus
    problems: List[Dict[str, Any]] = []

    if sum(o.size for o in forms.orbits) != n**3:
        problems.append({"kind": "form_total", "expected": n**3, "got": sum(o.size for o in forms.orbits)})
    if sum(o.size for o in pairs.orbits) != n**4:
        problems.append({"kind": "pair_total", "expected": n**4, "got": sum(o.size for o in pairs.orbits)})

    image: Dict[int, set] = {}
    for values in forms.states:
        coeffs = tuple(int(x) for x in values)
        pair = form_to_pair(make_form(ctx, coeffs, forms.flavor))
        target = pairs.orbit_of(_pair_values(pair))
        if target is None:
            problems.append({"kind": "not_traceable", "form": list(coeffs), "pair": list(_pair_values(pair))})
            continue
        image.setdefault(forms.orbit_of(coeffs), set()).add(target)

    matches: List[Tuple[int, int]] = []
    for i, orbit in enumerate(forms.orbits):
        targets = sorted(image.get(i, ()))
        if len(targets) != 1:
            problems.append(
                {
                    "kind": "not_well_defined",
                    "form": list(orbit.representative),
                    "pairs": [list(pairs.orbits[j].representative) for j in targets],
                }
            )
            continue
        matches.append((i, targets[0]))

    hit: Dict[int, List[int]] = {}
    for i, j in matches:
        hit.setdefault(j, []).append(i)
    for j, sources in sorted(hit.items()):
        if len(sources) > 1:
            problems.append(
                {
                    "kind": "not_injective",
                    "pair": list(pairs.orbits[j].representative),
                    "forms": [list(forms.orbits[i].representative) for i in sources],
                }
            )
    for j, orbit in enumerate(pairs.orbits):
        if j not in hit:
            problems.append({"kind": "not_surjective", "pair": list(orbit.representative)})

    for i, j in matches:
        f, p = forms.orbits[i], pairs.orbits[j]
        if f.discriminants != p.discriminants:
            problems.append(
                {
                    "kind": "discriminant",
                    "form": list(f.representative),
                    "pair": list(p.representative),
                    "form_discriminants": list(f.discriminants),
                    "pair_discriminants": list(p.discriminants),
                }
            )
        if f.primitive != p.primitive:
            problems.append(
                {
                    "kind": "primitivity",
                    "form": list(f.representative),
                    "pair": list(p.representative),
                    "primitive": f.primitive,
                    "invertible": p.primitive,
                }
            )
    return matches, problems


def verify_bijection(
    ring: Union[RingContext, str, int],
    flavor: Union[Flavor, str] = Flavor.LINEAR,
    bound: int = DEFAULT_CENSUS_BOUND,
    jobs: Optional[int] = None,
) -> BijectionReport:
    start = time.monotonic()
    flavor = Flavor(flavor)
    forms = enumerate_form_orbits(ring, flavor, bound, jobs)
    pairs = enumerate_pair_classes(ring, flavor, bound, jobs)
    matches, problems = match_censuses(forms, pairs)
    elapsed = time.monotonic() - start
    report = BijectionReport(
        ring=forms.ring,
        flavor=flavor,
        form_states=forms.total,
        pair_states=pairs.total,
        form_orbits=len(forms.orbits),
        pair_classes=len(pairs.orbits),
        matches=tuple((forms.orbits[i].representative, pairs.orbits[j].representative) for i, j in matches),
        discrepancies=tuple(problems),
        elapsed=elapsed,
    )
    if report.passed:
        logger.info("%s %s: %d orbits matched in %.3fs", report.ring, flavor.value, len(matches), elapsed)
    else:
        logger.warning("%s %s: %d discrepancies", report.ring, flavor.value, len(problems))
    return report
