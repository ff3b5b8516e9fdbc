#ifndef MLAB_TOOLS_REPORT_HPP
#define MLAB_TOOLS_REPORT_HPP

// Report plumbing shared by the command handlers: typed access to parsed
// options, JSON conversions of library values, and the report envelope.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlab/mlab.hpp"

namespace mlab::cli {

using json = nlohmann::ordered_json;

enum class Verdict { ok, fail, inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::ok: return "ok";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Bad option values detected after CLI parsing; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Result {
    json payload = json::object();
    Verdict verdict = Verdict::ok;
    json counters = json::object();
    std::vector<std::string> warnings;
};

struct Settings {
    std::uint64_t seed = 0;
    GroebnerOptions groebner;
    std::string corpus_dir;
};

/// Option values of one command invocation, keyed by option name without dashes.
class Args {
public:
    Args(std::map<std::string, std::string> values, std::map<std::string, bool> flags, const Settings& settings)
        : values_(std::move(values)), flags_(std::move(flags)), settings_(settings) {}

    const Settings& settings() const noexcept { return settings_; }

    bool has(const std::string& name) const { return values_.count(name) > 0; }
    bool flag(const std::string& name) const {
        auto it = flags_.find(name);
        return it != flags_.end() && it->second;
    }

    const std::string& text(const std::string& name) const {
        auto it = values_.find(name);
        if (it == values_.end()) throw UsageError("missing --" + name);
        return it->second;
    }

    std::string text_or(const std::string& name, std::string fallback) const {
        return has(name) ? text(name) : std::move(fallback);
    }

    std::int64_t integer(const std::string& name) const {
        const std::string& s = text(name);
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError("--" + name + " expects an integer, got '" + s + "'");
        }
    }

    std::int64_t integer_or(const std::string& name, std::int64_t fallback) const {
        return has(name) ? integer(name) : fallback;
    }

    std::uint64_t natural(const std::string& name, std::uint64_t fallback, std::uint64_t minimum = 0) const {
        std::int64_t v = integer_or(name, static_cast<std::int64_t>(fallback));
        if (v < static_cast<std::int64_t>(minimum))
            throw UsageError("--" + name + " must be >= " + std::to_string(minimum));
        return static_cast<std::uint64_t>(v);
    }

    std::vector<std::int64_t> integer_list(const std::string& name) const {
        std::vector<std::int64_t> out;
        for (auto& [piece, offset] : detail::split_top_level(text(name), ',')) {
            std::string s = piece;
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            try {
                std::size_t used = 0;
                out.push_back(std::stoll(s, &used));
                if (used != s.size()) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw UsageError("--" + name + " expects comma-separated integers, got '" + text(name) + "'");
            }
        }
        return out;
    }

    Ring ring() const { return parse_ring(text("ring")); }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> flags_;
    const Settings& settings_;
};

inline json to_json(const std::vector<Polynomial>& fs) {
    json out = json::array();
    for (const auto& f : fs) out.push_back(to_string(f));
    return out;
}

inline json to_json(const CechStrand& s) {
    return json{{"mu", s.mu}, {"cochain_dims", s.cochain_dims}, {"cohomology_dims", s.cohomology_dims}, {"ranks", s.ranks}};
}

inline std::string prime_name(std::uint32_t mask, std::size_t n) {
    if (mask == 0) return "0";
    std::string s = "(";
    for (std::size_t v = 0; v < n; ++v)
        if ((mask >> v) & 1) s += (s.size() > 1 ? "," : "") + ("x" + std::to_string(v + 1));
    return s + ")";
}

template <class Coefficient>
json to_json(const DualTower<Coefficient>& t, const WitnessReport<Coefficient>& w) {
    json out{{"variant", variant_name(t.variant())}, {"levels", t.levels()}};
    out["witness_level"] = w.witness_level ? json(*w.witness_level) : json(nullptr);
    out["entry"] = w.entry ? json(w.entry->to_string()) : json(nullptr);
    out["bound"] = w.bound ? json(*w.bound) : json(nullptr);
    out["levels_examined"] = w.levels_examined;
    out["image_compatible"] = w.image_compatible;
    return out;
}

} // namespace mlab::cli

#endif
