#ifndef HEPAR_HESTD_HPP
#define HEPAR_HESTD_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hepar/circuit.hpp"

namespace hepar {

enum class SecType { classical, quantum };

inline const char* sec_type_name(SecType t) { return t == SecType::classical ? "classical" : "quantum"; }

inline SecType sec_type_from(const std::string& s) {
    if (s == "classical") return SecType::classical;
    if (s == "quantum") return SecType::quantum;
    throw std::invalid_argument("security type must be \"classical\" or \"quantum\", got \"" + s + "\"");
}

inline constexpr std::array<int, 3> kLambdas{128, 192, 256};

/// Maximum total moduli bits B(logN, lambda, type) permitted by the HE
/// security standard for uniform ternary secrets.
class BudgetTable {
  public:
    BudgetTable() : bits_(default_bits()) { check_invariants(); }

    static BudgetTable from_json(const std::string& text) {
        BudgetTable t;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("budget override is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw std::invalid_argument("budget override must be a JSON object");
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            int log_n = 0, lambda = 0;
            char type_buf[16] = {0};
            if (std::sscanf(it.key().c_str(), "%d,%d,%15s", &log_n, &lambda, type_buf) != 3)
                throw std::invalid_argument("budget key must be \"logN,lambda,type\", got \"" + it.key() + "\"");
            if (!it->is_number_integer() || it->get<int>() < 1)
                throw std::invalid_argument("budget for \"" + it.key() + "\" must be a positive integer");
            t.bits_[index(log_n, lambda, sec_type_from(type_buf))] = it->get<int>();
        }
        t.check_invariants();
        return t;
    }

    int budget(int log_n, int lambda, SecType type) const { return bits_[index(log_n, lambda, type)]; }

  private:
    static std::size_t index(int log_n, int lambda, SecType type) {
        if (log_n < kLogNMin || log_n > kLogNMax)
            throw std::invalid_argument("no budget for logN " + std::to_string(log_n));
        int li = -1;
        for (std::size_t i = 0; i < kLambdas.size(); ++i)
            if (kLambdas[i] == lambda) li = static_cast<int>(i);
        if (li < 0) throw std::invalid_argument("no budget for lambda " + std::to_string(lambda));
        return static_cast<std::size_t>(((log_n - kLogNMin) * 3 + li) * 2 + (type == SecType::quantum ? 1 : 0));
    }

    static std::array<int, 30> default_bits() {
        // logN 11..15; per logN: (128,cl),(128,qu),(192,cl),(192,qu),(256,cl),(256,qu)
        return {54,  51,  37,  35,  29,  27,   //
                109, 101, 75,  70,  58,  54,   //
                218, 202, 152, 141, 118, 109,  //
                438, 411, 305, 284, 237, 220,  //
                881, 827, 611, 571, 476, 443};
    }

    void check_invariants() const {
        for (int lambda : kLambdas)
            for (SecType t : {SecType::classical, SecType::quantum})
                for (int n = kLogNMin; n < kLogNMax; ++n)
                    if (!(budget(n, lambda, t) < budget(n + 1, lambda, t)))
                        throw std::invalid_argument("budget table: bits must grow strictly with logN");
        for (int n = kLogNMin; n <= kLogNMax; ++n)
            for (SecType t : {SecType::classical, SecType::quantum})
                for (std::size_t i = 0; i + 1 < kLambdas.size(); ++i)
                    if (!(budget(n, kLambdas[i], t) > budget(n, kLambdas[i + 1], t)))
                        throw std::invalid_argument("budget table: bits must shrink strictly with lambda");
        for (int n = kLogNMin; n <= kLogNMax; ++n)
            for (int lambda : kLambdas)
                if (!(budget(n, lambda, SecType::quantum) <= budget(n, lambda, SecType::classical)))
                    throw std::invalid_argument("budget table: quantum budget must not exceed classical");
    }

    std::array<int, 30> bits_;
};

inline constexpr double kSigma = 3.2;
inline constexpr int kMaxModulusBits = 60;

/// A complete CKKS parametrization. chain[0] is the special prime and the
/// last chain entry mirrors it.
struct Parametrization {
    int log_n = 0;
    int lambda = 0;
    SecType sec_type = SecType::classical;
    std::vector<int> chain;
    int scale = 0;
    int p = 0;
    double sigma = kSigma;

    std::int64_t total_bits() const {
        std::int64_t s = 0;
        for (int q : chain) s += q;
        return s;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"logn", log_n},       {"lambda", lambda}, {"sec_type", sec_type_name(sec_type)},
                              {"chain", chain},      {"scale", scale},   {"p", p},
                              {"sigma", sigma}};
    }

    static Parametrization from_json(const std::string& text) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("parametrization is not valid JSON: ") + e.what());
        }
        Parametrization p;
        try {
            p.log_n = doc.at("logn").get<int>();
            p.lambda = doc.at("lambda").get<int>();
            p.sec_type = sec_type_from(doc.at("sec_type").get<std::string>());
            p.chain = doc.at("chain").get<std::vector<int>>();
            p.scale = doc.at("scale").get<int>();
            p.p = doc.at("p").get<int>();
            p.sigma = doc.value("sigma", kSigma);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("malformed parametrization: ") + e.what());
        }
        return p;
    }
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& c : checks)
            os << (c.pass ? "pass" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
        os << (pass() ? "overall: pass" : "overall: FAIL") << "\n";
        return os.str();
    }
};

/// Check a parametrization against the standard's budget, the chain-shape
/// rules, and the circuit's needs. Diagnostic only; never throws on bad
/// parameters.
inline ValidationReport validate(const Parametrization& params, const CircuitProfile& profile,
                                 const BudgetTable& budgets = BudgetTable()) {
    ValidationReport rep;
    const auto add = [&](std::string name, bool pass, std::string detail) {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    bool key_ok = params.log_n >= kLogNMin && params.log_n <= kLogNMax;
    bool lambda_ok = false;
    for (int l : kLambdas) lambda_ok = lambda_ok || l == params.lambda;
    add("parameter keys", key_ok && lambda_ok,
        "logN " + std::to_string(params.log_n) + ", lambda " + std::to_string(params.lambda) + ", " +
            sec_type_name(params.sec_type));
    if (!key_ok || !lambda_ok) return rep;

    const int budget = budgets.budget(params.log_n, params.lambda, params.sec_type);
    const std::int64_t total = params.total_bits();
    add("budget", total <= budget,
        "sum logq " + std::to_string(total) + " vs budget " + std::to_string(budget));

    const bool nonempty = params.chain.size() >= 2;
    add("chain shape", nonempty, "chain has " + std::to_string(params.chain.size()) + " moduli");
    if (!nonempty) return rep;

    add("precise encryption", params.chain.front() == params.chain.back(),
        "chain ends " + std::to_string(params.chain.front()) + " / " + std::to_string(params.chain.back()));

    bool spacing = true;
    for (std::size_t i = 1; i + 1 < params.chain.size(); ++i)
        spacing = spacing && params.chain[i] + params.p <= params.chain.front();
    add("precision spacing", spacing,
        "interior logq + p <= logq0 with p = " + std::to_string(params.p));

    bool range = true;
    for (int q : params.chain) range = range && q >= 1 && q <= kMaxModulusBits;
    add("modulus range", range, "every logq within [1, 60]");

    const ProfileEntry& entry = profile.at(params.log_n);
    add("chain length", static_cast<int>(params.chain.size()) == entry.depth + 1,
        "chain " + std::to_string(params.chain.size()) + " vs depth " + std::to_string(entry.depth) + " + 1");

    add("slot fit", slot_count(params.log_n) * entry.split >= profile.max_vec,
        std::to_string(slot_count(params.log_n)) + " slots x split " + std::to_string(entry.split) +
            " vs max vector " + std::to_string(profile.max_vec));

    add("sigma", params.sigma == kSigma, "sigma " + std::to_string(params.sigma));
    return rep;
}

}  // namespace hepar

#endif  // HEPAR_HESTD_HPP
