#pragma once

#include <string>

#include "closurelab/families.hpp"

#include "json.hpp"

namespace closurelab {

/// Polynomial record: [{"e": k, "c": "p/q"}, ...].
Poly<Rational> poly_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const Poly<Rational>& p);

/// Externally supplied deformed system at one parameter sample.
///
/// {"family": "L", "parameters": {"g": "7/3"}, "D": [{"d": 2, "type": "I"}], "xi": <poly>,
///  "P": {"rule": "explicit", "polys": [<poly>, ...]}
///     | {"rule": "classical-combination", "coefficients": [<poly A_0>, <poly A_1>, ...], "divide_by": <poly>}}
///
/// The classical-combination rule gives P_{D,n} = (sum_k A_k d^k P_n) / divide_by with P_n the
/// undeformed eigenpolynomial. Energies come from the family and cannot be overridden.
/// The Hamiltonian is fixed by the ansatz route; degrees, eigen-equations (n <= validate_to)
/// and the h-ratio symmetry of the X_min recurrence are checked on load.
DeformedFamily<Rational> load_family_plugin(const std::string& path, int validate_to = 5);
DeformedFamily<Rational> family_from_plugin_json(const nlohmann::json& doc, int validate_to = 5);

/// Parameter sample stored in a plugin file.
ParamSet plugin_parameters(const nlohmann::json& doc);

}  // namespace closurelab
