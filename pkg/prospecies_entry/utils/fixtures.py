# ============================================================================
# FILE: prospecies_entry/utils/fixtures.py
# ============================================================================
"""Reference instances in .prosp syntax"""

from typing import Dict

from prospecies_entry.engine.prospecies import ProSpecies
from prospecies_entry.utils.dsl import parse_instance

# k at both vertices of 1 -> 2; T(Λ) is kA₂
FIX_A = """\
field Q;
quiver { vertex 1 2; arrow alpha: 1 -> 2; }
bimodule alpha { kind: regular; }
"""

# kA₂ at both vertices, the regular bimodule on the arrow
FIX_B = """\
field Q;
quiver { vertex 1 2; arrow alpha: 1 -> 2; }
algebra 1 {
  quiver { vertex 1 2; arrow b: 1 -> 2; }
}
algebra 2 {
  quiver { vertex 1 2; arrow b: 1 -> 2; }
}
bimodule alpha { kind: regular; }
"""

# k[x]/(x²) at both vertices, gls(2, 2, 1, 1, 1) on the arrow
FIX_C = """\
field Q;
quiver { vertex 1 2; arrow alpha: 1 -> 2; }
algebra 1 {
  quiver { vertex 1; arrow x: 1 -> 1; }
  relations { x.x; }
}
algebra 2 {
  quiver { vertex 2; arrow x: 2 -> 2; }
  relations { x.x; }
}
bimodule alpha { kind: gls(2, 2, 1, 1, 1); }
"""

# One vertex with a loop; the arrow bimodule is k[x]/(x²) itself
LOOP = """\
field Q;
quiver { vertex 1; arrow alpha: 1 -> 1; }
algebra 1 {
  quiver { vertex 1; arrow x: 1 -> 1; }
  relations { x.x; }
}
bimodule alpha { kind: regular; }
"""

# FIX_C with the bimodule written out as a presented quotient
FIX_C_PRESENTED = """\
field Q;
quiver { vertex 1 2; arrow alpha: 1 -> 2; }
algebra 1 {
  quiver { vertex 1; arrow x: 1 -> 1; }
  relations { x.x; }
}
algebra 2 {
  quiver { vertex 2; arrow x: 2 -> 2; }
  relations { x.x; }
}
bimodule alpha {
  kind: presented {
    summands: (2, 1);
    kernel: x.#0 - #0.x;
  }
}
"""

FIXTURES: Dict[str, str] = {
    'A': FIX_A,
    'B': FIX_B,
    'C': FIX_C,
    'loop': LOOP,
    'C-presented': FIX_C_PRESENTED,
}


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"No fixture {name!r}; available: {', '.join(FIXTURES)}")
    return FIXTURES[name]


def load_fixture(name: str) -> ProSpecies:
    return parse_instance(fixture_text(name))
