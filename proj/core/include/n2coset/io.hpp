#pragma once

#include <string>

#include "n2coset/catalog.hpp"
#include "n2coset/characters.hpp"
#include "n2coset/fusion.hpp"
#include "n2coset/series.hpp"

namespace n2coset {

/* {"Dz":..,"Dq":..,"q_order":"num/den","terms":[{"q":..,"z":..,"c":..},..]}
 * with terms sorted by (q, z) and coefficients as decimal strings.
 * Round-trips bit-exactly. */
std::string series_to_json(const Series2& s);
Series2 series_from_json(const std::string& text);

std::string label_to_json(const ModuleLabel& l);
ModuleLabel label_from_json(const std::string& text);

std::string groth_to_json(const GrothVector& g);
std::string fusion_result_to_json(const FusionResult& f);
std::string report_to_json(const CheckReport& r);

/* Label grammar used by the CLI:
 *   N2:L[i=0,p=0,r=1]      N2:D+[i=0,p=1/2,r=1,s=1]   N2:D-[...]
 *   N2:E[i=0,p=0,r=1,s=1]  N2:E+[...]  N2:E-[...]  N2:S[...]
 *   SL2:L[r=1]  SL2:D+[r=1,s=1]  SL2:E[lambda=1/3,r=1,s=1]
 *   GH:0        FOCK:3/2
 * Key order is free; p, lambda accept "num/den".  Throws MathError(BadInput)
 * with the offending position in the message. */
ModuleLabel parse_label(const std::string& spec);

}  // namespace n2coset
