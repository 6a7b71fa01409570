#include "padic/json_io.hpp"

#include <sstream>

#include "padic/errors.hpp"

namespace padic {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing JSON field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad JSON field \"") + key + "\": " + e.what());
    }
}

} // namespace

json scalar_to_json(const PAdicScalar& x) {
    json digits = json::array();
    for (Digit d : x.digits()) digits.push_back(d);
    json out = {{"p", x.prime()}};
    if (x.is_exact_zero()) {
        out["val"] = "inf";
    } else {
        out["val"] = x.valuation();
    }
    out["digits"] = std::move(digits);
    out["prec"] = x.precision();
    return out;
}

PAdicScalar scalar_from_json(const json& j) {
    const auto p = get_as<std::int64_t>(j, "p");
    require_prime(p);
    const auto digits = get_as<std::vector<Digit>>(j, "digits");
    const auto prec = get_as<int>(j, "prec");
    const json& val = field(j, "val");
    if (val.is_string()) {
        if (val.get<std::string>() != "inf") throw InvalidInput("scalar \"val\" must be an integer or \"inf\"");
        if (!digits.empty()) throw InvalidInput("exact zero cannot carry digits");
        return PAdicScalar::exact_zero(p, std::max(prec, 1));
    }
    if (!val.is_number_integer()) throw InvalidInput("scalar \"val\" must be an integer or \"inf\"");
    const int v = val.get<int>();
    if (digits.empty()) {
        if (prec != 0) throw InvalidInput("zero at precision must have \"prec\": 0");
        return PAdicScalar::zero_at_precision(p, v);
    }
    if (static_cast<int>(digits.size()) != prec) throw InvalidInput("\"prec\" must equal the number of digits");
    return PAdicScalar::from_unit(p, v, digits);
}

json matrix_to_json(const PAdicMatrix& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(scalar_to_json(a(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"n", a.rows()}, {"m", a.cols()}, {"p", a.prime()}, {"prec", a.precision()}, {"entries", std::move(rows)}};
}

PAdicMatrix matrix_from_json(const json& j) {
    const auto n = get_as<std::size_t>(j, "n");
    const auto m = get_as<std::size_t>(j, "m");
    const auto p = get_as<std::int64_t>(j, "p");
    const auto prec = get_as<int>(j, "prec");
    require_prime(p);
    const json& rows = field(j, "entries");
    if (!rows.is_array() || rows.size() != n) throw InvalidInput("matrix \"entries\" must have n rows");
    std::vector<PAdicScalar> entries;
    entries.reserve(n * m);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != m) throw InvalidInput("matrix rows must have m entries");
        for (const auto& e : row) {
            entries.push_back(scalar_from_json(e));
            if (entries.back().prime() != p) throw PrimeMismatch("matrix entry has a different prime");
        }
    }
    return PAdicMatrix(n, m, p, prec, std::move(entries));
}

json signature_to_json(const Signature& s) { return s.parts(); }

Signature signature_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("signature must be a JSON array of integers");
    std::vector<int> parts;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InvalidInput("signature must be a JSON array of integers");
        parts.push_back(x.get<int>());
    }
    return Signature(std::move(parts));
}

json measure_to_json(const SignatureMeasure& m) {
    json out = json::array();
    for (const auto& [s, w] : m.support()) out.push_back({{"sig", signature_to_json(s)}, {"w", to_fraction_string(w)}});
    return out;
}

SignatureMeasure measure_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("measure must be a nonempty JSON list");
    std::vector<std::pair<Signature, Rational>> support;
    for (const auto& item : j) {
        const json& w = field(item, "w");
        if (!w.is_string()) throw InvalidInput("measure weights must be strings \"a/b\"");
        support.emplace_back(signature_from_json(field(item, "sig")), parse_rational(w.get<std::string>()));
    }
    return SignatureMeasure(std::move(support));
}

json trajectory_to_json(const Trajectory& tr) {
    json events = json::array();
    for (const auto& e : tr.events()) events.push_back({{"t", e.time}, {"sig", signature_to_json(e.state)}});
    return {{"N", tr.n()}, {"events", std::move(events)}};
}

Trajectory trajectory_from_json(const json& j) {
    const auto n = get_as<std::size_t>(j, "N");
    const json& events = field(j, "events");
    if (!events.is_array() || events.empty()) throw InvalidInput("trajectory needs at least the initial event");
    Trajectory tr(signature_from_json(field(events.front(), "sig")));
    if (tr.n() != n) throw InvalidInput("trajectory states must have length N");
    for (std::size_t i = 1; i < events.size(); ++i) {
        tr.record(get_as<double>(events[i], "t"), signature_from_json(field(events[i], "sig")));
    }
    return tr;
}

std::string generator_to_csv(const GeneratorMatrix& g) {
    std::ostringstream os;
    for (const auto& [kappa, nu, q] : g.entries()) {
        os << kappa.to_string() << ';' << nu.to_string() << ';' << to_fraction_string(q) << '\n';
    }
    return os.str();
}

} // namespace padic
