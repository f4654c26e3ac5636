#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsig {

/// Positive per-variable weights; the all-ones vector is the standard grading.
using WeightVector = std::vector<std::uint32_t>;

/// Variable names plus grading weights of the ambient polynomial ring.
/// Immutable after construction and shared by every Poly living in it.
class Ambient {
public:
    Ambient(std::vector<std::string> vars, WeightVector weights)
        : vars_(std::move(vars)), weights_(std::move(weights)) {
        if (vars_.empty())
            throw std::invalid_argument("Ambient: at least one variable required");
        if (weights_.size() != vars_.size())
            throw std::invalid_argument("Ambient: weight count must match variable count");
        for (auto w : weights_)
            if (w == 0) throw std::invalid_argument("Ambient: weights must be >= 1");
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].empty())
                throw std::invalid_argument("Ambient: empty variable name");
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j])
                    throw std::invalid_argument("Ambient: duplicate variable '" + vars_[i] + "'");
        }
    }

    std::size_t nvars() const noexcept { return vars_.size(); }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const WeightVector& weights() const noexcept { return weights_; }

    bool standard_graded() const noexcept {
        for (auto w : weights_)
            if (w != 1) return false;
        return true;
    }

    std::uint32_t min_weight() const noexcept {
        std::uint32_t m = weights_[0];
        for (auto w : weights_)
            if (w < m) m = w;
        return m;
    }

    /// Index of a variable name, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t index_of(const std::string& name) const noexcept {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return npos;
    }

    bool operator==(const Ambient& o) const noexcept {
        return vars_ == o.vars_ && weights_ == o.weights_;
    }

private:
    std::vector<std::string> vars_;
    WeightVector weights_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline AmbientPtr make_ambient(std::vector<std::string> vars, WeightVector weights) {
    return std::make_shared<const Ambient>(std::move(vars), std::move(weights));
}

inline AmbientPtr make_ambient(std::vector<std::string> vars) {
    WeightVector w(vars.size(), 1);
    return std::make_shared<const Ambient>(std::move(vars), std::move(w));
}

} // namespace fsig
