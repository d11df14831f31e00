#pragma once

#include <string>
#include <vector>

#include "crepant/errors.hpp"

namespace crepant::fixtures {

struct FixtureFile {
    std::string filename;
    std::string content;
};

// ---------------------------------------------------------------------------
// local_cy_genus_g: Z2 quotient of a rank-2 local Calabi-Yau over a genus-g
// curve vs. the blow-up along the curve.
// ---------------------------------------------------------------------------

inline const char* local_cy_orbifold = R"json({
  "metadata": {
    "name": "local_cy_genus_g.orbifold",
    "description": "Z2 quotient of a rank-2 local Calabi-Yau over a genus-g curve: degree-2 triple intersections of the orbifold",
    "notes": "alpha integrates to 1 on the curve; beta is the constant 1 on the twisted sector (degree shift 1). The listed triple is the only nonzero one. The candidate map is the literal one proposed for this example; it verifies only up to sign over Q, so reports show it next to the solver's witness."
  },
  "parameters": { "g": "2" },
  "basis": [
    { "name": "alpha", "degree": 2 },
    { "name": "beta", "degree": 2 }
  ],
  "cubic_form": true,
  "triples": [
    { "i": "alpha", "j": "beta", "k": "beta", "value": "1/2" }
  ],
  "candidate_map": { "alpha": "1", "beta": "2" }
}
)json";

inline const char* local_cy_resolution = R"json({
  "metadata": {
    "name": "local_cy_genus_g.resolution",
    "description": "crepant resolution side: blow-up along the genus-g curve, ruled exceptional surface S; alpha' is the pullback of alpha, beta' is dual to S",
    "notes": "Classical values K_S[C] = -2 and K_S^2 = 8(1-g). A small deformation moves S into 2(g-1) rigid rational curves, each contributing the constant per-degree invariant, so the only correction series is the (beta',beta',beta') tail with coefficient 2(g-1) * (beta'[C])^3 and beta'[C] = -2."
  },
  "parameters": { "g": "2" },
  "basis": [
    { "name": "alpha'", "degree": 2 },
    { "name": "beta'", "degree": 2 }
  ],
  "cubic_form": true,
  "triples": [
    { "i": "alpha'", "j": "beta'", "k": "beta'", "value": "-2" },
    { "i": "beta'", "j": "beta'", "k": "beta'", "value": "8*(1-g)" }
  ],
  "rays": { "names": ["C"], "nondegenerate": true },
  "series": [
    {
      "triple": ["beta'", "beta'", "beta'"],
      "tails": [ { "ray": "C", "from": 1, "value": "2*(g-1)*(-2)*(-2)*(-2)" } ]
    }
  ]
}
)json";

// ---------------------------------------------------------------------------
// hilb2_surface: Hilbert scheme of 2 points of a simply connected algebraic
// surface vs. the symmetric square orbifold, one tracked degree-2 class h.
// ---------------------------------------------------------------------------

inline const char* hilb2_orbifold = R"json({
  "metadata": {
    "name": "hilb2_surface.orbifold",
    "description": "orbifold side M^2/Z2: invariant classes one, sigma = 1xh+hx1, Hplus = 1xH+Hx1, tau = hxh+hxh, rho = hxH+Hxh, HH = HxH, and twisted classes t1, th, tH (degree shift 1)",
    "notes": "Only the listed twisted-sector triples are part of the source computation; the full pairing on the twisted sector is unspecified there, so this bundle stays in tensor mode and full-ring completion is deferred. Untwisted classes are identified with their pullbacks on the resolution side (fixed_classes). The candidate map is the literal proposal t1 -> 2 e1, th -> 2 eh, tH -> eH; over Q it refutes (the data forces a square to be -1/4), while the solver's Q(i) witness passes."
  },
  "parameters": { "<h,h>": "1" },
  "basis": [
    { "name": "one", "degree": 0 },
    { "name": "sigma", "degree": 2 },
    { "name": "Hplus", "degree": 4 },
    { "name": "tau", "degree": 4 },
    { "name": "rho", "degree": 6 },
    { "name": "HH", "degree": 8 },
    { "name": "t1", "degree": 2 },
    { "name": "th", "degree": 4 },
    { "name": "tH", "degree": 6 }
  ],
  "top_degree": 8,
  "triples": [
    { "i": "t1", "j": "t1", "k": "Hplus", "value": "1" },
    { "i": "t1", "j": "t1", "k": "tau", "value": "<h,h>" },
    { "i": "t1", "j": "th", "k": "sigma", "value": "<h,h>" }
  ],
  "fixed_classes": ["one", "sigma", "Hplus", "tau", "rho", "HH"],
  "candidate_map": {
    "one": "1", "sigma": "1", "Hplus": "1", "tau": "1", "rho": "1", "HH": "1",
    "t1": "2", "th": "2", "tH": "1"
  }
}
)json";

inline const char* hilb2_resolution = R"json({
  "metadata": {
    "name": "hilb2_surface.resolution",
    "description": "Hilbert scheme M^[2]: exceptional-divisor classes e1 (dual to E), eh (dual to p^{-1}(PD(h))), eH (dual to the fiber), over the same untwisted classes",
    "notes": "The only correction series is the (e1,e1,eh) tail with per-degree coefficient 8<K,h>. The source computation switches between <K,h> and <C1,h> with a sign slip; this bundle defines <K,h> = -<C1,h> so the corrected entry cancels the classical -4<C1,h> exactly, and records the choice here rather than resolving the slip."
  },
  "parameters": { "<h,h>": "1", "<C1,h>": "3", "<K,h>": "-<C1,h>" },
  "basis": [
    { "name": "one", "degree": 0 },
    { "name": "sigma", "degree": 2 },
    { "name": "Hplus", "degree": 4 },
    { "name": "tau", "degree": 4 },
    { "name": "rho", "degree": 6 },
    { "name": "HH", "degree": 8 },
    { "name": "e1", "degree": 2 },
    { "name": "eh", "degree": 4 },
    { "name": "eH", "degree": 6 }
  ],
  "top_degree": 8,
  "triples": [
    { "i": "e1", "j": "e1", "k": "eh", "value": "-4*<C1,h>" },
    { "i": "e1", "j": "e1", "k": "Hplus", "value": "-4" },
    { "i": "e1", "j": "e1", "k": "tau", "value": "-4*<h,h>" },
    { "i": "e1", "j": "eh", "k": "sigma", "value": "-4*<h,h>" }
  ],
  "rays": { "names": ["C"], "nondegenerate": true },
  "series": [
    {
      "triple": ["e1", "e1", "eh"],
      "tails": [ { "ray": "C", "from": 1, "value": "8*<K,h>" } ]
    }
  ],
  "fixed_classes": ["one", "sigma", "Hplus", "tau", "rho", "HH"]
}
)json";

// ---------------------------------------------------------------------------
// c2_zgamma_pairing: the degree-2 orbifold pairing of C^2/Z3 and its
// hermitian fix.
// ---------------------------------------------------------------------------

inline const char* c2_z3_pairing = R"json({
  "metadata": {
    "name": "c2_zgamma_pairing",
    "description": "degree-2 orbifold pairing of C^2/Z3: twisted sectors of g and g^2 (both with degree shift 1), paired across inverse sectors",
    "notes": "The raw Poincare pairing on the twisted degree-2 classes is off-diagonal, hence indefinite. The hermitian pairing <<a,b>> = <a, I(b)>, with I the involution swapping inverse sectors, is positive definite for c > 0."
  },
  "parameters": { "c": "1/3" },
  "basis": [
    { "name": "beta_g", "degree": 2, "sector": "g" },
    { "name": "beta_g2", "degree": 2, "sector": "g2" }
  ],
  "top_degree": 4,
  "pairing": [
    ["0", "c"],
    ["c", "0"]
  ],
  "group": {
    "order": 3,
    "names": ["e", "g", "g2"],
    "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
    "iota": { "e": "0", "g": "1", "g2": "1" }
  },
  "involution": { "beta_g": "beta_g2", "beta_g2": "beta_g" }
}
)json";

// ---------------------------------------------------------------------------
// atiyah_flop: the two sides of a three-dimensional flop.
// ---------------------------------------------------------------------------

inline const char* atiyah_flop_x = R"json({
  "metadata": {
    "name": "atiyah_flop.x",
    "description": "three-dimensional flop, side X: degree-2 classes gamma1, gamma2 with curve degrees (gamma1.C, gamma2.C) = (1, -1) against the flopped rational curve C",
    "notes": "Data-level fixture. After multiple-cover cancellation the per-degree invariant along C is the constant (gamma_i.C)(gamma_j.C)(gamma_k.C), one geometric tail per triple. The flop changes each classical triple by minus that product, and the flopped curve is C' = -C."
  },
  "parameters": { "n1": "1", "n2": "-1" },
  "basis": [
    { "name": "gamma1", "degree": 2 },
    { "name": "gamma2", "degree": 2 }
  ],
  "cubic_form": true,
  "triples": [
    { "i": "gamma1", "j": "gamma1", "k": "gamma1", "value": "2" },
    { "i": "gamma1", "j": "gamma2", "k": "gamma2", "value": "1" },
    { "i": "gamma2", "j": "gamma2", "k": "gamma2", "value": "-3" }
  ],
  "rays": { "names": ["C"], "nondegenerate": true },
  "series": [
    { "triple": ["gamma1", "gamma1", "gamma1"], "tails": [ { "ray": "C", "from": 1, "value": "n1*n1*n1" } ] },
    { "triple": ["gamma1", "gamma1", "gamma2"], "tails": [ { "ray": "C", "from": 1, "value": "n1*n1*n2" } ] },
    { "triple": ["gamma1", "gamma2", "gamma2"], "tails": [ { "ray": "C", "from": 1, "value": "n1*n2*n2" } ] },
    { "triple": ["gamma2", "gamma2", "gamma2"], "tails": [ { "ray": "C", "from": 1, "value": "n2*n2*n2" } ] }
  ]
}
)json";

inline const char* atiyah_flop_xprime = R"json({
  "metadata": {
    "name": "atiyah_flop.xprime",
    "description": "three-dimensional flop, side X': the same degree-2 classes under the flop identification; classical triples differ by -(gamma_i.C)(gamma_j.C)(gamma_k.C) and the curve degrees flip sign",
    "notes": "Curve degrees (n1, n2) = (-1, 1) since C' = -C. Corrected triples on the two sides must agree exactly."
  },
  "parameters": { "n1": "-1", "n2": "1" },
  "basis": [
    { "name": "gamma1", "degree": 2 },
    { "name": "gamma2", "degree": 2 }
  ],
  "cubic_form": true,
  "triples": [
    { "i": "gamma1", "j": "gamma1", "k": "gamma1", "value": "1" },
    { "i": "gamma1", "j": "gamma1", "k": "gamma2", "value": "1" },
    { "i": "gamma2", "j": "gamma2", "k": "gamma2", "value": "-2" }
  ],
  "rays": { "names": ["C"], "nondegenerate": true },
  "series": [
    { "triple": ["gamma1", "gamma1", "gamma1"], "tails": [ { "ray": "C", "from": 1, "value": "n1*n1*n1" } ] },
    { "triple": ["gamma1", "gamma1", "gamma2"], "tails": [ { "ray": "C", "from": 1, "value": "n1*n1*n2" } ] },
    { "triple": ["gamma1", "gamma2", "gamma2"], "tails": [ { "ray": "C", "from": 1, "value": "n1*n2*n2" } ] },
    { "triple": ["gamma2", "gamma2", "gamma2"], "tails": [ { "ray": "C", "from": 1, "value": "n2*n2*n2" } ] }
  ]
}
)json";

// ---------------------------------------------------------------------------
// mukai_trivial: a four-dimensional Mukai transform; corrections vanish.
// ---------------------------------------------------------------------------

inline const char* mukai_x = R"json({
  "metadata": {
    "name": "mukai_trivial.x",
    "description": "Mukai transform side X: a small 4-fold ring (one class per even degree); every exceptional GW series vanishes",
    "notes": "The quantum corrections are trivial, so the corrected ring equals the classical ring and the identity map is a ring isomorphism onto the other side."
  },
  "basis": [
    { "name": "one", "degree": 0 },
    { "name": "a", "degree": 2 },
    { "name": "b", "degree": 4 },
    { "name": "c", "degree": 6 },
    { "name": "vol", "degree": 8 }
  ],
  "top_degree": 8,
  "pairing": [
    ["0", "0", "0", "0", "1"],
    ["0", "0", "0", "1", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "1", "0", "0", "0"],
    ["1", "0", "0", "0", "0"]
  ],
  "triples": [
    { "i": "one", "j": "one", "k": "vol", "value": "1" },
    { "i": "one", "j": "a", "k": "c", "value": "1" },
    { "i": "one", "j": "b", "k": "b", "value": "1" },
    { "i": "a", "j": "a", "k": "b", "value": "1" }
  ],
  "rays": { "names": ["L"], "nondegenerate": true },
  "series": []
}
)json";

inline const char* mukai_xprime = R"json({
  "metadata": {
    "name": "mukai_trivial.xprime",
    "description": "Mukai transform side X': identical ring data under the birational identification",
    "notes": "See mukai_trivial.x."
  },
  "basis": [
    { "name": "one", "degree": 0 },
    { "name": "a", "degree": 2 },
    { "name": "b", "degree": 4 },
    { "name": "c", "degree": 6 },
    { "name": "vol", "degree": 8 }
  ],
  "top_degree": 8,
  "pairing": [
    ["0", "0", "0", "0", "1"],
    ["0", "0", "0", "1", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "1", "0", "0", "0"],
    ["1", "0", "0", "0", "0"]
  ],
  "triples": [
    { "i": "one", "j": "one", "k": "vol", "value": "1" },
    { "i": "one", "j": "a", "k": "c", "value": "1" },
    { "i": "one", "j": "b", "k": "b", "value": "1" },
    { "i": "a", "j": "a", "k": "b", "value": "1" }
  ],
  "rays": { "names": ["L"], "nondegenerate": true },
  "series": []
}
)json";

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> list = {
        "local_cy_genus_g", "hilb2_surface", "c2_zgamma_pairing", "atiyah_flop", "mukai_trivial"};
    return list;
}

inline std::vector<FixtureFile> files(const std::string& fixture) {
    if (fixture == "local_cy_genus_g")
        return {{"local_cy_genus_g.orbifold.json", local_cy_orbifold},
                {"local_cy_genus_g.resolution.json", local_cy_resolution}};
    if (fixture == "hilb2_surface")
        return {{"hilb2_surface.orbifold.json", hilb2_orbifold},
                {"hilb2_surface.resolution.json", hilb2_resolution}};
    if (fixture == "c2_zgamma_pairing")
        return {{"c2_zgamma_pairing.json", c2_z3_pairing}};
    if (fixture == "atiyah_flop")
        return {{"atiyah_flop.x.json", atiyah_flop_x},
                {"atiyah_flop.xprime.json", atiyah_flop_xprime}};
    if (fixture == "mukai_trivial")
        return {{"mukai_trivial.x.json", mukai_x}, {"mukai_trivial.xprime.json", mukai_xprime}};
    throw UnknownFixture("'" + fixture + "' (known: local_cy_genus_g, hilb2_surface, "
                         "c2_zgamma_pairing, atiyah_flop, mukai_trivial)");
}

inline std::vector<FixtureFile> all_files() {
    std::vector<FixtureFile> out;
    for (const auto& n : names())
        for (auto& f : files(n)) out.push_back(std::move(f));
    return out;
}

} // namespace crepant::fixtures
