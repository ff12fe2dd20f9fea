#include "formcount/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace formcount {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* name : allowed)
            if (it.key() == name) ok = true;
        if (!ok)
            throw std::invalid_argument("unknown field '" + it.key() + "' in " + where);
    }
}

std::int64_t require_int(const json& v, const std::string& where) {
    if (!v.is_number_integer())
        throw std::invalid_argument(where + " must be an integer");
    return v.get<std::int64_t>();
}

std::vector<int> require_exps(const json& v, int len, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != len)
        throw std::invalid_argument(where + " must be an array of length " +
                                    std::to_string(len));
    std::vector<int> out(len);
    for (int i = 0; i < len; ++i) {
        const std::int64_t e = require_int(v[i], where + " entry");
        if (e < 0 || e > 64) throw std::invalid_argument(where + " entry out of range");
        out[i] = static_cast<int>(e);
    }
    return out;
}

std::map<std::vector<int>, BigInt> parse_terms(const json& terms, int len,
                                               const std::string& where) {
    if (!terms.is_array())
        throw std::invalid_argument(where + ".terms must be an array");
    std::map<std::vector<int>, BigInt> out;
    for (const auto& t : terms) {
        if (!t.is_object()) throw std::invalid_argument(where + " term must be an object");
        reject_unknown_fields(t, {"exps", "coeff"}, where + " term");
        if (!t.contains("exps") || !t.contains("coeff"))
            throw std::invalid_argument(where + " term needs 'exps' and 'coeff'");
        std::vector<int> exps = require_exps(t["exps"], len, where + ".exps");
        const BigInt coeff = BigInt(require_int(t["coeff"], where + ".coeff"));
        out[exps] += coeff;
    }
    return out;
}

}  // namespace

FormSystem parse_form_system(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("input document must be an object");
    reject_unknown_fields(doc, {"degree", "num_vars", "forms", "target"}, "document");
    if (!doc.contains("degree") || !doc.contains("num_vars") || !doc.contains("forms"))
        throw std::invalid_argument("document needs 'degree', 'num_vars' and 'forms'");

    const std::int64_t d = require_int(doc["degree"], "degree");
    const std::int64_t s = require_int(doc["num_vars"], "num_vars");
    if (d < 2) throw std::invalid_argument("degree must be at least 2");
    if (s < 1 || s > 64) throw std::invalid_argument("num_vars out of range");

    const auto& forms_json = doc["forms"];
    if (!forms_json.is_array() || forms_json.empty())
        throw std::invalid_argument("'forms' must be a nonempty array");

    std::vector<Form> forms;
    int index = 0;
    for (const auto& f : forms_json) {
        if (!f.is_object()) throw std::invalid_argument("form must be an object");
        reject_unknown_fields(f, {"name", "terms"}, "form");
        std::string name = "F" + std::to_string(index + 1);
        if (f.contains("name")) {
            if (!f["name"].is_string())
                throw std::invalid_argument("form name must be a string");
            name = f["name"].get<std::string>();
        }
        if (!f.contains("terms"))
            throw std::invalid_argument("form '" + name + "' needs 'terms'");
        auto terms = parse_terms(f["terms"], static_cast<int>(s), "form '" + name + "'");
        forms.emplace_back(static_cast<int>(d), static_cast<int>(s), std::move(terms),
                           name);
        ++index;
    }
    return FormSystem(std::move(forms));
}

std::optional<int> document_target_m(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("target")) return std::nullopt;
    const auto& t = doc["target"];
    if (!t.is_object() || !t.contains("m")) return std::nullopt;
    return static_cast<int>(require_int(t["m"], "target.m"));
}

TargetSystem target_from_document(const nlohmann::json& doc, int m, int num_forms,
                                  int degree) {
    if (!doc.is_object() || !doc.contains("target"))
        return TargetSystem::zero(m, degree, num_forms);
    const auto& t = doc["target"];
    if (!t.is_object()) throw std::invalid_argument("'target' must be an object");
    reject_unknown_fields(t, {"m", "psis"}, "target");
    if (t.contains("m")) {
        const std::int64_t tm = require_int(t["m"], "target.m");
        if (tm != m)
            throw std::invalid_argument("target.m = " + std::to_string(tm) +
                                        " conflicts with m = " + std::to_string(m));
    }
    if (!t.contains("psis")) return TargetSystem::zero(m, degree, num_forms);
    const auto& psis_json = t["psis"];
    if (!psis_json.is_array() || static_cast<int>(psis_json.size()) != num_forms)
        throw std::invalid_argument("target.psis must list exactly " +
                                    std::to_string(num_forms) + " polynomials");
    std::vector<std::map<std::vector<int>, BigInt>> psis;
    int index = 0;
    for (const auto& p : psis_json) {
        if (!p.is_object()) throw std::invalid_argument("psi must be an object");
        reject_unknown_fields(p, {"terms"}, "psi");
        const std::string where = "psi[" + std::to_string(index++) + "]";
        if (!p.contains("terms")) {
            psis.emplace_back();
            continue;
        }
        psis.push_back(parse_terms(p["terms"], m, where));
    }
    return TargetSystem(m, degree, num_forms, std::move(psis));
}

nlohmann::json parse_json_text(const std::string& text) {
    return nlohmann::json::parse(text);
}

nlohmann::json load_document(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return nlohmann::json::parse(buf.str());
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    nlohmann::json doc;
    in >> doc;
    return doc;
}

nlohmann::json bigint_json(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
    return v.str();
}

BigInt bigint_from_json(const nlohmann::json& v) {
    if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
    if (v.is_string()) return BigInt(v.get<std::string>());
    throw std::invalid_argument("expected integer or integer string");
}

nlohmann::json rational_json(const BigRat& v) {
    nlohmann::json out;
    out["num"] = bigint_json(numerator(v));
    out["den"] = bigint_json(denominator(v));
    return out;
}

nlohmann::json complex_json(std::complex<double> z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json output_envelope(const std::string& command, nlohmann::json params,
                               nlohmann::json result, nlohmann::json diagnostics) {
    nlohmann::json out;
    out["command"] = command;
    out["params"] = std::move(params);
    out["result"] = std::move(result);
    out["diagnostics"] = std::move(diagnostics);
    out["version"] = kVersion;
    return out;
}

std::string coordinate_name(int flat_index, int s) {
    const int block = flat_index / s + 1;
    const int comp = flat_index % s + 1;
    return "x" + std::to_string(block) + "_" + std::to_string(comp);
}

nlohmann::json count_result_json(const CountResult& r) {
    nlohmann::json out;
    out["P"] = r.P;
    out["count"] = r.count;
    out["ms"] = r.ms;
    out["partitions_processed"] = r.partitions_processed;
    out["wall_time"] = r.wall_time;
    return out;
}

nlohmann::json local_density_json(const LocalDensity& d) {
    nlohmann::json out;
    out["p"] = d.p;
    out["l"] = d.l;
    out["gamma"] = bigint_json(d.gamma);
    out["chi"] = rational_json(d.chi);
    out["chi_decimal"] = d.chi.convert_to<double>();
    out["method"] = d.method;
    return out;
}

}  // namespace formcount
