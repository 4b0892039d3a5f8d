#ifndef HEPAR_CIRCUIT_HPP
#define HEPAR_CIRCUIT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hepar {

inline constexpr int kLogNMin = 11;
inline constexpr int kLogNMax = 15;
inline constexpr int kLogNCount = kLogNMax - kLogNMin + 1;

inline std::int64_t slot_count(int log_n) { return std::int64_t{1} << (log_n - 1); }

enum class OpKind { add, mul, mul_plain, rotate, aggregate, diag_matmul };

struct CircuitOp {
    OpKind kind;
    std::int64_t length = 0;  // aggregate
    std::int64_t rows = 0;    // diag-matmul
    std::int64_t cols = 0;    // diag-matmul
};

/// A linear list of homomorphic operations over packed vectors of the
/// declared length. Multiplication depth is the longest run of consecutive
/// depth-consuming operations.
struct CircuitIR {
    std::vector<CircuitOp> ops;
    std::int64_t vec_len = 0;
};

/// Static analysis of a circuit for one candidate ring degree.
struct ProfileEntry {
    int log_n = 0;
    int depth = 0;
    std::int64_t n_add = 0;
    std::int64_t n_mul = 0;
    std::int64_t n_rot = 0;
    int split = 1;  // ciphertexts per logical vector
};

struct CircuitProfile {
    std::array<ProfileEntry, kLogNCount> entries{};
    int min_depth = 0;
    int max_depth = 0;
    std::int64_t max_vec = 0;

    const ProfileEntry& at(int log_n) const {
        if (log_n < kLogNMin || log_n > kLogNMax)
            throw std::invalid_argument("logN out of candidate range");
        return entries[static_cast<std::size_t>(log_n - kLogNMin)];
    }
};

/// Analyze one circuit for one candidate logN. Aggregation costs logN
/// consecutive multiplications; diagonal matrix multiplication costs one
/// multiplicative level plus its rotation and addition fan-in. Vectors
/// longer than the slot count split into multiple ciphertexts, which scales
/// the operation counts and adds log2(split) levels of recombination.
inline ProfileEntry analyze(const CircuitIR& circuit, int log_n) {
    if (log_n < kLogNMin || log_n > kLogNMax) throw std::invalid_argument("logN out of candidate range");
    if (circuit.ops.empty()) throw std::invalid_argument("circuit has no operations");
    if (circuit.vec_len < 1) throw std::invalid_argument("vec_len must be positive");

    ProfileEntry e;
    e.log_n = log_n;

    int chain = 0, depth = 0;
    for (const CircuitOp& op : circuit.ops) {
        switch (op.kind) {
            case OpKind::mul:
            case OpKind::mul_plain:
                ++chain;
                ++e.n_mul;
                break;
            case OpKind::aggregate:
                chain += log_n;
                e.n_mul += log_n;
                break;
            case OpKind::diag_matmul:
                ++chain;
                e.n_mul += op.cols;
                e.n_rot += op.cols - 1;
                e.n_add += op.cols - 1;
                break;
            case OpKind::add:
                ++e.n_add;
                chain = 0;
                break;
            case OpKind::rotate:
                ++e.n_rot;
                chain = 0;
                break;
        }
        depth = std::max(depth, chain);
    }

    const std::int64_t slots = slot_count(log_n);
    e.split = static_cast<int>((circuit.vec_len + slots - 1) / slots);
    if (e.split > 1) {
        e.n_add *= e.split;
        e.n_mul *= e.split;
        e.n_rot *= e.split;
        depth += static_cast<int>(std::ceil(std::log2(static_cast<double>(e.split))));
    }
    e.depth = std::max(1, depth);  // a chain needs one rescaling modulus even without muls
    return e;
}

inline CircuitProfile profile_from_entries(const std::array<ProfileEntry, kLogNCount>& entries,
                                           std::int64_t max_vec) {
    CircuitProfile p;
    p.entries = entries;
    p.max_vec = max_vec;
    p.min_depth = entries[0].depth;
    p.max_depth = entries[0].depth;
    for (const auto& e : entries) {
        p.min_depth = std::min(p.min_depth, e.depth);
        p.max_depth = std::max(p.max_depth, e.depth);
    }
    return p;
}

/// Analyze a circuit for every candidate logN, resolving the circular
/// parameter-circuit dependency by enumeration.
inline CircuitProfile profile_all(const CircuitIR& circuit) {
    std::array<ProfileEntry, kLogNCount> entries{};
    for (int n = kLogNMin; n <= kLogNMax; ++n)
        entries[static_cast<std::size_t>(n - kLogNMin)] = analyze(circuit, n);
    return profile_from_entries(entries, circuit.vec_len);
}

using CircuitDocument = std::variant<CircuitIR, CircuitProfile>;

namespace detail {

inline void reject_unknown_fields(const nlohmann::json& obj, std::initializer_list<const char*> known,
                                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("unknown field \"" + it.key() + "\" in " + where);
    }
}

inline std::int64_t positive_int(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\" in " + where);
    if (!obj[key].is_number_integer() || obj[key].get<std::int64_t>() < 1)
        throw std::invalid_argument(std::string("field \"") + key + "\" in " + where + " must be a positive integer");
    return obj[key].get<std::int64_t>();
}

inline CircuitIR parse_ir(const nlohmann::json& doc) {
    reject_unknown_fields(doc, {"ops", "vec_len"}, "circuit document");
    CircuitIR ir;
    ir.vec_len = positive_int(doc, "vec_len", "circuit document");
    if (!doc.contains("ops") || !doc["ops"].is_array() || doc["ops"].empty())
        throw std::invalid_argument("\"ops\" must be a non-empty array");
    std::size_t idx = 0;
    for (const auto& jop : doc["ops"]) {
        const std::string where = "ops[" + std::to_string(idx++) + "]";
        if (!jop.is_object() || !jop.contains("op"))
            throw std::invalid_argument(where + " must be an object with an \"op\" field");
        const std::string name = jop["op"].get<std::string>();
        CircuitOp op{};
        if (name == "add") {
            op.kind = OpKind::add;
            reject_unknown_fields(jop, {"op"}, where);
        } else if (name == "mul") {
            op.kind = OpKind::mul;
            reject_unknown_fields(jop, {"op"}, where);
        } else if (name == "mul-plain") {
            op.kind = OpKind::mul_plain;
            reject_unknown_fields(jop, {"op"}, where);
        } else if (name == "rotate") {
            op.kind = OpKind::rotate;
            reject_unknown_fields(jop, {"op"}, where);
        } else if (name == "aggregate") {
            op.kind = OpKind::aggregate;
            reject_unknown_fields(jop, {"op", "length"}, where);
            op.length = positive_int(jop, "length", where);
        } else if (name == "diag-matmul") {
            op.kind = OpKind::diag_matmul;
            reject_unknown_fields(jop, {"op", "rows", "cols"}, where);
            op.rows = positive_int(jop, "rows", where);
            op.cols = positive_int(jop, "cols", where);
        } else {
            throw std::invalid_argument("unknown op \"" + name + "\" in " + where);
        }
        ir.ops.push_back(op);
    }
    return ir;
}

inline CircuitProfile parse_profile(const nlohmann::json& doc) {
    reject_unknown_fields(doc, {"profile", "max_vec"}, "circuit document");
    const std::int64_t max_vec = positive_int(doc, "max_vec", "circuit document");
    const auto& prof = doc["profile"];
    if (!prof.is_object()) throw std::invalid_argument("\"profile\" must be an object keyed by logN");
    std::array<ProfileEntry, kLogNCount> entries{};
    std::array<bool, kLogNCount> seen{};
    for (auto it = prof.begin(); it != prof.end(); ++it) {
        int log_n = 0;
        try {
            log_n = std::stoi(it.key());
        } catch (const std::exception&) {
            throw std::invalid_argument("profile key \"" + it.key() + "\" is not a logN value");
        }
        if (log_n < kLogNMin || log_n > kLogNMax)
            throw std::invalid_argument("profile key \"" + it.key() + "\" outside logN 11..15");
        const std::string where = "profile[\"" + it.key() + "\"]";
        reject_unknown_fields(*it, {"depth", "add", "mul", "rot"}, where);
        ProfileEntry e;
        e.log_n = log_n;
        e.depth = static_cast<int>(positive_int(*it, "depth", where));
        for (const char* k : {"add", "mul", "rot"})
            if (!it->contains(k) || !(*it)[k].is_number_integer() || (*it)[k].get<std::int64_t>() < 0)
                throw std::invalid_argument(std::string("field \"") + k + "\" in " + where +
                                            " must be a non-negative integer");
        e.n_add = (*it)["add"].get<std::int64_t>();
        e.n_mul = (*it)["mul"].get<std::int64_t>();
        e.n_rot = (*it)["rot"].get<std::int64_t>();
        const std::int64_t slots = slot_count(log_n);
        e.split = static_cast<int>((max_vec + slots - 1) / slots);
        entries[static_cast<std::size_t>(log_n - kLogNMin)] = e;
        seen[static_cast<std::size_t>(log_n - kLogNMin)] = true;
    }
    for (int n = kLogNMin; n <= kLogNMax; ++n)
        if (!seen[static_cast<std::size_t>(n - kLogNMin)])
            throw std::invalid_argument("profile is missing logN " + std::to_string(n));
    return profile_from_entries(entries, max_vec);
}

}  // namespace detail

/// Parse a circuit document: either an operation list to analyze or a
/// directly supplied per-logN profile (expert bypass).
inline CircuitDocument load_circuit(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("circuit document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("circuit document must be a JSON object");
    if (doc.contains("profile")) return detail::parse_profile(doc);
    return detail::parse_ir(doc);
}

/// Profile from a parsed document, analyzing if necessary.
inline CircuitProfile profile_of(const CircuitDocument& doc) {
    if (std::holds_alternative<CircuitProfile>(doc)) return std::get<CircuitProfile>(doc);
    return profile_all(std::get<CircuitIR>(doc));
}

}  // namespace hepar

#endif  // HEPAR_CIRCUIT_HPP
