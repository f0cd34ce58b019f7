// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "basis.hpp"
#include "bloch.hpp"
#include "complex_matrix.hpp"
#include "errors.hpp"
#include "mixture_weights.hpp"
#include "mub.hpp"
#include "relation.hpp"
#include "sampling.hpp"

namespace mubsim {

// Serialization writes through this fixed-order, fixed-format emitter
// so identical inputs yield byte-identical files on every platform.
// Doubles are printed with 17 significant digits, enough to round-trip
// IEEE binary64 exactly. Parsing uses the vendored nlohmann header.
class JsonWriter {
  public:
    std::string take() { return std::move(out_); }

    JsonWriter &begin_object() {
        separate();
        out_ += '{';
        fresh_ = true;
        return *this;
    }

    JsonWriter &end_object() {
        out_ += '}';
        fresh_ = false;
        return *this;
    }

    JsonWriter &begin_array() {
        separate();
        out_ += '[';
        fresh_ = true;
        return *this;
    }

    JsonWriter &end_array() {
        out_ += ']';
        fresh_ = false;
        return *this;
    }

    JsonWriter &key(const char *name) {
        separate();
        out_ += '"';
        out_ += name;
        out_ += "\":";
        fresh_ = true;
        return *this;
    }

    JsonWriter &value(double v) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("refusing to serialize a non-finite number");
        }
        separate();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ += buf;
        fresh_ = false;
        return *this;
    }

    JsonWriter &value(std::uint64_t v) {
        separate();
        out_ += std::to_string(v);
        fresh_ = false;
        return *this;
    }

    JsonWriter &value(bool v) {
        separate();
        out_ += v ? "true" : "false";
        fresh_ = false;
        return *this;
    }

    JsonWriter &value(const std::string &v) {
        separate();
        out_ += '"';
        for (const char c : v) {
            if (c == '"' || c == '\\') {
                out_ += '\\';
            }
            out_ += c;
        }
        out_ += '"';
        fresh_ = false;
        return *this;
    }

    // Splice an already-serialized JSON value.
    JsonWriter &raw(const std::string &serialized) {
        separate();
        out_ += serialized;
        fresh_ = false;
        return *this;
    }

  private:
    // Insert the comma between siblings; nothing after '{', '[' or ':'.
    void separate() {
        if (!fresh_ && !out_.empty()) {
            const char last = out_.back();
            if (last != '{' && last != '[' && last != ':') {
                out_ += ',';
            }
        }
        fresh_ = false;
    }

    std::string out_;
    bool fresh_ = true;
};

namespace detail {

inline void emit_matrix_body(JsonWriter &w, const ComplexMatrix &m) {
    w.begin_object();
    w.key("dim").value(m.dim());
    w.key("re").begin_array();
    for (const auto &e : m.entries()) {
        w.value(e.real());
    }
    w.end_array();
    w.key("im").begin_array();
    for (const auto &e : m.entries()) {
        w.value(e.imag());
    }
    w.end_array();
    w.end_object();
}

inline void emit_basis_body(JsonWriter &w, const OrthonormalBasis &basis) {
    w.begin_array();
    for (std::size_t j = 0; j < basis.dim(); ++j) {
        const Ket &v = basis.vector(j);
        w.begin_object();
        w.key("re").begin_array();
        for (const auto &c : v) {
            w.value(c.real());
        }
        w.end_array();
        w.key("im").begin_array();
        for (const auto &c : v) {
            w.value(c.imag());
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
}

inline const nlohmann::json &require_field(const nlohmann::json &j, const char *name) {
    const auto it = j.find(name);
    if (it == j.end()) {
        throw InvalidArgument(std::string("missing JSON field \"") + name + "\"");
    }
    return *it;
}

inline std::vector<double> number_array(const nlohmann::json &j, const char *name) {
    const nlohmann::json &field = require_field(j, name);
    if (!field.is_array()) {
        throw InvalidArgument(std::string("JSON field \"") + name + "\" must be an array");
    }
    std::vector<double> values;
    values.reserve(field.size());
    for (const auto &v : field) {
        if (!v.is_number()) {
            throw InvalidArgument(std::string("JSON field \"") + name +
                                  "\" must hold only numbers");
        }
        values.push_back(v.get<double>());
    }
    return values;
}

} // namespace detail

// {"dim":N,"re":[row-major reals],"im":[row-major imaginaries]}
inline std::string matrix_to_json(const ComplexMatrix &m) {
    JsonWriter w;
    detail::emit_matrix_body(w, m);
    return w.take();
}

inline ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw InvalidArgument("matrix JSON must be an object");
    }
    const auto &dim_field = detail::require_field(j, "dim");
    if (!dim_field.is_number_unsigned()) {
        throw InvalidArgument("matrix dim must be a nonnegative integer");
    }
    const std::size_t n = dim_field.get<std::size_t>();
    const std::vector<double> re = detail::number_array(j, "re");
    const std::vector<double> im = detail::number_array(j, "im");
    if (re.size() != n * n || im.size() != n * n) {
        throw InvalidArgument("matrix arrays must hold dim*dim entries");
    }
    std::vector<Complex> entries(n * n);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        entries[k] = Complex(re[k], im[k]);
    }
    return ComplexMatrix(n, std::move(entries));
}

inline ComplexMatrix matrix_from_json(const std::string &text) {
    return matrix_from_json(nlohmann::json::parse(text));
}

// {"dim":N,"bases":[[{"re":[...],"im":[...]}, ...], ...]}
inline std::string bases_to_json(const std::vector<OrthonormalBasis> &bases) {
    JsonWriter w;
    w.begin_object();
    w.key("dim").value(bases.empty() ? std::size_t{0} : bases[0].dim());
    w.key("bases").begin_array();
    for (const auto &basis : bases) {
        detail::emit_basis_body(w, basis);
    }
    w.end_array();
    w.end_object();
    return w.take();
}

inline std::vector<OrthonormalBasis> bases_from_json(const std::string &text,
                                                     double tol = 1e-12) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) {
        throw InvalidArgument("basis-set JSON must be an object");
    }
    const auto &dim_field = detail::require_field(j, "dim");
    if (!dim_field.is_number_unsigned()) {
        throw InvalidArgument("basis-set dim must be a nonnegative integer");
    }
    const std::size_t n = dim_field.get<std::size_t>();
    const auto &bases_field = detail::require_field(j, "bases");
    if (!bases_field.is_array()) {
        throw InvalidArgument("\"bases\" must be an array");
    }
    std::vector<OrthonormalBasis> bases;
    bases.reserve(bases_field.size());
    for (const auto &basis_json : bases_field) {
        if (!basis_json.is_array() || basis_json.size() != n) {
            throw InvalidArgument("each basis must be an array of dim vectors");
        }
        std::vector<Ket> vectors;
        vectors.reserve(n);
        for (const auto &vec_json : basis_json) {
            const std::vector<double> re = detail::number_array(vec_json, "re");
            const std::vector<double> im = detail::number_array(vec_json, "im");
            if (re.size() != n || im.size() != n) {
                throw InvalidArgument("each basis vector must hold dim components");
            }
            Ket ket(n);
            for (std::size_t k = 0; k < n; ++k) {
                ket[k] = Complex(re[k], im[k]);
            }
            vectors.push_back(std::move(ket));
        }
        bases.emplace_back(std::move(vectors), tol);
    }
    return bases;
}

// {"seed":S,"shots_per_basis":M,"counts":[[...], ...]}
inline std::string sample_record_to_json(const SampleRecord &record) {
    JsonWriter w;
    w.begin_object();
    w.key("seed").value(record.seed);
    w.key("shots_per_basis").value(record.shots_per_basis);
    w.key("counts").begin_array();
    for (const auto &row : record.counts) {
        w.begin_array();
        for (const std::uint64_t c : row) {
            w.value(c);
        }
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

inline SampleRecord sample_record_from_json(const std::string &text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) {
        throw InvalidArgument("sample-record JSON must be an object");
    }
    SampleRecord record;
    const auto &seed = detail::require_field(j, "seed");
    const auto &shots = detail::require_field(j, "shots_per_basis");
    const auto &counts = detail::require_field(j, "counts");
    if (!seed.is_number_unsigned() || !shots.is_number_unsigned()) {
        throw InvalidArgument("seed and shots_per_basis must be nonnegative integers");
    }
    record.seed = seed.get<std::uint64_t>();
    record.shots_per_basis = shots.get<std::uint64_t>();
    if (!counts.is_array()) {
        throw InvalidArgument("\"counts\" must be an array of arrays");
    }
    for (const auto &row_json : counts) {
        if (!row_json.is_array()) {
            throw InvalidArgument("\"counts\" must be an array of arrays");
        }
        std::vector<std::uint64_t> row;
        row.reserve(row_json.size());
        for (const auto &c : row_json) {
            if (!c.is_number_unsigned()) {
                throw InvalidArgument("counts must be nonnegative integers");
            }
            row.push_back(c.get<std::uint64_t>());
        }
        record.counts.push_back(std::move(row));
    }
    return record;
}

inline std::string mub_report_to_json(const MubVerification &check,
                                      const std::vector<OrthonormalBasis> &bases) {
    JsonWriter w;
    w.begin_object();
    w.key("dim").value(bases.empty() ? std::size_t{0} : bases[0].dim());
    w.key("is_mub").value(check.is_mub);
    w.key("max_deviation").value(check.max_deviation);
    w.key("worst_pair").begin_array().value(check.worst_a).value(check.worst_b).end_array();
    w.key("bases").begin_array();
    for (const auto &basis : bases) {
        detail::emit_basis_body(w, basis);
    }
    w.end_array();
    w.end_object();
    return w.take();
}

inline std::string relation_scan_to_json(const RelationScan &scan) {
    JsonWriter w;
    w.begin_object();
    w.key("dim").value(scan.dim);
    w.key("trials").value(scan.trials);
    w.key("lambda_fit").value(scan.lambda_fit);
    w.key("lambda_defined").value(scan.lambda_defined);
    w.key("max_residual").value(scan.max_residual);
    w.key("holds").value(scan.holds);
    w.key("worst_state");
    detail::emit_matrix_body(w, scan.worst_state);
    w.end_object();
    return w.take();
}

inline std::string counterexample_report_to_json(const DirectionTriple &dirs,
                                                 const MixtureWeights &weights,
                                                 std::size_t trials,
                                                 const AffineFitReport &report,
                                                 double max_identity_gap) {
    JsonWriter w;
    w.begin_object();
    w.key("directions").begin_array();
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec3 &n = dirs.direction(i);
        w.begin_array().value(n.x).value(n.y).value(n.z).end_array();
    }
    w.end_array();
    w.key("weights").begin_array();
    for (const double v : weights.values()) {
        w.value(v);
    }
    w.end_array();
    w.key("trials").value(trials);
    w.key("best_alpha").value(report.best_alpha);
    w.key("best_beta").value(report.best_beta);
    w.key("worst_case_residual").value(report.worst_case_residual);
    w.key("max_identity_gap").value(max_identity_gap);
    w.end_object();
    return w.take();
}

} // namespace mubsim
