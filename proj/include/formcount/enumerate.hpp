#pragma once

#include "formcount/bigint.hpp"
#include "formcount/poly.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace formcount {

// Thread count and iteration budget shared by all enumeration loops.
struct RunConfig {
    int threads = 0;  // 0 = resolve from FORMCOUNT_THREADS, then hardware
    std::uint64_t max_iter = 10'000'000'000ULL;
};

int resolve_threads(int requested);

// Raised when a box would exceed the configured iteration budget. The box is
// refused outright; results are never silently truncated.
class WorkLimitError : public std::runtime_error {
public:
    WorkLimitError(std::uint64_t required, std::uint64_t limit);
    std::uint64_t required() const { return required_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t required_;
    std::uint64_t limit_;
};

// side^dims clamped at UINT64_MAX.
std::uint64_t box_points(std::uint64_t side, int dims);

void require_within_limit(std::uint64_t points, const RunConfig& cfg);

// Runs fn(chunk) for chunk in [0, nchunks) across workers. Callers regain
// determinism by indexing results per chunk and merging in chunk order.
void parallel_chunks(std::uint64_t nchunks, int threads,
                     const std::function<void(std::uint64_t)>& fn);

// Compensated accumulation for complex sums over large boxes.
struct KahanComplex {
    double re = 0, im = 0, cre = 0, cim = 0;

    void add(double r, double i) {
        double yr = r - cre, yi = i - cim;
        double tr = re + yr, ti = im + yi;
        cre = (tr - re) - yr;
        cim = (ti - im) - yi;
        re = tr;
        im = ti;
    }
    void add(std::complex<double> z) { add(z.real(), z.imag()); }
    std::complex<double> value() const { return {re, im}; }
};

namespace detail {

template <class V>
inline V normalize_mod(V x, const V& m) {
    x %= m;
    if (x < 0) x += m;
    return x;
}

template <class V>
inline V pow_small(V base, int exp, const V& modulus) {
    V out = exp > 0 ? base : V(1);
    for (int i = 1; i < exp; ++i) {
        out *= base;
        if (modulus != 0) out %= modulus;
    }
    return out;
}

}  // namespace detail

struct EnumResult {
    std::uint64_t count = 0;
    std::uint64_t partitions = 0;
};

// Exhaustive enumeration of a uniform box [lo,hi]^nvars against a list of
// polynomial equations, organised as a partial-evaluation ladder: each
// monomial is charged to its highest variable, so advancing one coordinate
// only touches the monomials containing it, and an equation is tested the
// moment its last variable is assigned. Works over the integers
// (modulus == 0) or modulo a positive integer.
template <class V>
class BoxLadder {
public:
    BoxLadder(const std::vector<const Poly*>& eqs, const std::vector<BigInt>& targets,
              int nvars, std::int64_t lo, std::int64_t hi, const V& modulus);

    // Counts points where every equation vanishes. The first prefix.size()
    // coordinates are pinned. When witnesses != nullptr, solutions are
    // appended in enumeration order up to witness_cap (the count stays exact).
    EnumResult count(const std::vector<std::int64_t>& prefix, const RunConfig& cfg,
                     std::uint64_t witness_cap = 0,
                     std::vector<std::vector<std::int64_t>>* witnesses = nullptr) const;

    // Requires a single equation and a positive modulus that fits a vector
    // index: tallies the value of the polynomial over the whole box.
    std::vector<std::uint64_t> histogram(const RunConfig& cfg) const;

private:
    struct Entry {
        int eq;
        V coeff;
        std::vector<std::pair<int, int>> prefix_facs;  // vars strictly below top
        int top_exp;
    };

    struct Runner;

    V reduce_coeff(const BigInt& c) const;
    V add(V a, V b) const {
        if (modulus_ == 0) return a + b;
        V t = a + b;
        if (t >= modulus_) t -= modulus_;
        return t;
    }
    V mul(V a, V b) const {
        V t = a * b;
        if (modulus_ != 0) t %= modulus_;
        return t;
    }

    int nvars_;
    std::int64_t lo_, hi_;
    V modulus_;
    int num_eqs_;
    std::vector<V> constants_;                 // constant minus target, per eq
    std::vector<int> det_depth_;               // depth at which eq is decided
    std::vector<std::vector<Entry>> buckets_;  // [depth] -> entries, excludes innermost
    // Innermost monomials, split into prefix-independent (tabulated once)
    // and prefix-dependent (re-collected per subtree).
    std::vector<std::vector<V>> inner_table_;       // [eq][hi-lo+1] or empty
    std::vector<std::vector<Entry>> inner_dynamic_;  // [eq] entries with top == nvars-1
    bool all_inner_static_ = true;

    friend struct Runner;
};

extern template class BoxLadder<std::int64_t>;
extern template class BoxLadder<BigInt>;

// Certifies that an int64 ladder cannot overflow on the given box: every
// partial sum is bounded by |const| + sum |coeff| * maxabs^deg per equation.
bool int64_ladder_safe(const std::vector<const Poly*>& eqs,
                       const std::vector<BigInt>& targets, std::int64_t lo,
                       std::int64_t hi);

// Engine dispatch used by the counting-style callers: int64 ladder when the
// a-priori bound certifies it, arbitrary precision otherwise.
EnumResult count_zeros(const std::vector<const Poly*>& eqs,
                       const std::vector<BigInt>& targets, int nvars,
                       std::int64_t lo, std::int64_t hi, const BigInt& modulus,
                       const std::vector<std::int64_t>& prefix, const RunConfig& cfg,
                       std::uint64_t witness_cap = 0,
                       std::vector<std::vector<std::int64_t>>* witnesses = nullptr);

}  // namespace formcount
