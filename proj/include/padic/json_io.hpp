#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "padic/generator.hpp"
#include "padic/matrix.hpp"
#include "padic/processes.hpp"
#include "padic/sampling.hpp"

namespace padic {

// {"p", "val": int | "inf", "digits": [...], "prec"}; digits little-endian base p.
// A zero known only modulo p^k is written with "val": k, no digits and "prec": 0.
nlohmann::json scalar_to_json(const PAdicScalar& x);
PAdicScalar scalar_from_json(const nlohmann::json& j);

// {"n", "m", "p", "prec", "entries": [[scalar, ...], ...]}
nlohmann::json matrix_to_json(const PAdicMatrix& a);
PAdicMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json signature_to_json(const Signature& s);
Signature signature_from_json(const nlohmann::json& j);

// [{"sig": [...], "w": "a/b"}, ...]
nlohmann::json measure_to_json(const SignatureMeasure& m);
SignatureMeasure measure_from_json(const nlohmann::json& j);

// {"N", "events": [{"t", "sig"}, ...]}
nlohmann::json trajectory_to_json(const Trajectory& tr);
Trajectory trajectory_from_json(const nlohmann::json& j);

// One "kappa;nu;num/den" line per nonzero entry, diagonal included, in state order.
std::string generator_to_csv(const GeneratorMatrix& g);

} // namespace padic
