#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace superkoszul {

struct ContextError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PhaseSpaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IterationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VarRole {
    base,
    even_momentum,
    odd_antimomentum,
    form_differential,
    auxiliary,
};

struct GradedVariable {
    std::string name;
    int parity = 0;  // 0 or 1
    int weight = 0;  // fiber-degree grading
    VarRole role = VarRole::base;
};

/// Ordered set of graded variables plus named degree gradings.
/// Declaration order fixes the canonical ordering of odd symbols:
/// every sign in the engine is an inversion count against it.
class VariableContext {
public:
    static constexpr int kMaxVars = 64;  // odd factors live in a 64-bit mask

    int add_variable(GradedVariable v) {
        if (index_.count(v.name))
            throw ContextError("duplicate variable name: " + v.name);
        if (static_cast<int>(vars_.size()) >= kMaxVars)
            throw ContextError("variable limit exceeded");
        int idx = static_cast<int>(vars_.size());
        index_.emplace(v.name, idx);
        vars_.push_back(std::move(v));
        for (auto& [name, w] : gradings_) w.push_back(0);
        return idx;
    }

    void register_grading(const std::string& name) {
        if (!gradings_.count(name))
            gradings_.emplace(name, std::vector<int>(vars_.size(), 0));
    }

    void set_grading_weight(const std::string& grading, int var, int w) {
        auto it = gradings_.find(grading);
        if (it == gradings_.end()) throw ContextError("unknown grading: " + grading);
        it->second.at(static_cast<size_t>(var)) = w;
    }

    bool has_grading(const std::string& name) const {
        return name == "lambda" || gradings_.count(name) > 0;
    }

    const std::vector<int>& grading_weights(const std::string& name) const {
        auto it = gradings_.find(name);
        if (it == gradings_.end()) throw ContextError("unknown grading: " + name);
        return it->second;
    }

    int size() const { return static_cast<int>(vars_.size()); }

    const GradedVariable& var(int idx) const { return vars_.at(static_cast<size_t>(idx)); }

    int find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    int require(const std::string& name) const {
        int idx = find(name);
        if (idx < 0) throw ContextError("unknown variable: " + name);
        return idx;
    }

    int parity(int idx) const { return var(idx).parity; }

    const std::map<std::string, std::vector<int>>& gradings() const { return gradings_; }

private:
    std::vector<GradedVariable> vars_;
    std::unordered_map<std::string, int> index_;
    std::map<std::string, std::vector<int>> gradings_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

/// Per-grading degree caps. Multiplication and substitution discard
/// over-cap terms eagerly. "lambda" caps the exponent of the formal
/// parameter; negative lambda exponents are only admitted when
/// allow_negative_lambda is set (principal-symbol bookkeeping).
struct TruncationPolicy {
    std::map<std::string, int> caps;
    bool allow_negative_lambda = false;

    int cap(const std::string& grading) const {
        auto it = caps.find(grading);
        return it == caps.end() ? -1 : it->second;  // -1: unbounded
    }

    bool operator==(const TruncationPolicy&) const = default;
};

}  // namespace superkoszul
