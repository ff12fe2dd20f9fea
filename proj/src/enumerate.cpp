#include "formcount/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace formcount {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FORMCOUNT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0 && v < 4096) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

WorkLimitError::WorkLimitError(std::uint64_t required, std::uint64_t limit)
    : std::runtime_error("work limit exceeded: box needs " + std::to_string(required) +
                         " iterations, limit is " + std::to_string(limit)),
      required_(required), limit_(limit) {}

std::uint64_t box_points(std::uint64_t side, int dims) {
    std::uint64_t total = 1;
    for (int i = 0; i < dims; ++i) {
        if (side != 0 && total > UINT64_MAX / side) return UINT64_MAX;
        total *= side;
    }
    return total;
}

void require_within_limit(std::uint64_t points, const RunConfig& cfg) {
    if (points > cfg.max_iter) throw WorkLimitError(points, cfg.max_iter);
}

void parallel_chunks(std::uint64_t nchunks, int threads,
                     const std::function<void(std::uint64_t)>& fn) {
    threads = std::min<std::uint64_t>(std::max(threads, 1), nchunks);
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c) fn(c);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (true) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

template <class V>
V BoxLadder<V>::reduce_coeff(const BigInt& c) const {
    if (modulus_ == 0) {
        if constexpr (std::is_same_v<V, BigInt>)
            return c;
        else
            return to_int64(c);
    }
    BigInt m;
    if constexpr (std::is_same_v<V, BigInt>)
        m = modulus_;
    else
        m = BigInt(modulus_);
    BigInt r = c % m;
    if (r < 0) r += m;
    if constexpr (std::is_same_v<V, BigInt>)
        return r;
    else
        return to_int64(r);
}

template <class V>
BoxLadder<V>::BoxLadder(const std::vector<const Poly*>& eqs,
                        const std::vector<BigInt>& targets, int nvars,
                        std::int64_t lo, std::int64_t hi, const V& modulus)
    : nvars_(nvars), lo_(lo), hi_(hi), modulus_(modulus),
      num_eqs_(static_cast<int>(eqs.size())) {
    if (hi_ < lo_) throw std::invalid_argument("empty coordinate range");
    if (modulus_ < 0) throw std::invalid_argument("negative modulus");
    if constexpr (std::is_same_v<V, std::int64_t>) {
        if (modulus_ > (std::int64_t{1} << 31) - 1)
            throw std::invalid_argument("modulus too large for the int64 ladder");
    }
    if (targets.size() != eqs.size())
        throw std::invalid_argument("one target per equation required");

    constants_.assign(num_eqs_, V(0));
    det_depth_.assign(num_eqs_, -1);
    buckets_.assign(std::max(nvars_, 1), {});
    inner_table_.assign(num_eqs_, {});
    inner_dynamic_.assign(num_eqs_, {});

    const int inner = nvars_ - 1;
    std::vector<std::vector<Entry>> inner_static(num_eqs_);
    for (int k = 0; k < num_eqs_; ++k) {
        constants_[k] = reduce_coeff(-targets[k]);
        for (const auto& [exps, coeff] : eqs[k]->terms()) {
            Entry e;
            e.eq = k;
            e.coeff = reduce_coeff(coeff);
            e.top_exp = 0;
            int top = -1;
            for (int v = 0; v < nvars_; ++v)
                if (exps[v] > 0) top = v;
            if (top < 0) {
                constants_[k] = add(constants_[k], e.coeff);
                continue;
            }
            for (int v = 0; v < top; ++v)
                if (exps[v] > 0) e.prefix_facs.emplace_back(v, exps[v]);
            e.top_exp = exps[top];
            det_depth_[k] = std::max(det_depth_[k], top);
            if (top == inner) {
                if (e.prefix_facs.empty())
                    inner_static[k].push_back(std::move(e));
                else
                    inner_dynamic_[k].push_back(std::move(e));
            } else {
                buckets_[top].push_back(std::move(e));
            }
        }
    }

    // Tabulate the prefix-independent innermost part once per equation.
    const std::int64_t side = hi_ - lo_ + 1;
    for (int k = 0; k < num_eqs_; ++k) {
        if (inner_static[k].empty()) continue;
        std::vector<V> tbl(static_cast<std::size_t>(side), V(0));
        for (std::int64_t v = lo_; v <= hi_; ++v) {
            V x = modulus_ != 0 ? detail::normalize_mod(V(v), modulus_) : V(v);
            V acc = 0;
            for (const auto& e : inner_static[k])
                acc = add(acc, mul(e.coeff, detail::pow_small(x, e.top_exp, modulus_)));
            tbl[static_cast<std::size_t>(v - lo_)] = acc;
        }
        inner_table_[k] = std::move(tbl);
    }
    for (int k = 0; k < num_eqs_; ++k)
        if (!inner_dynamic_[k].empty()) all_inner_static_ = false;
}

template <class V>
struct BoxLadder<V>::Runner {
    const BoxLadder& L;
    bool counting;  // early rejection on; off for histogram mode
    std::vector<std::int64_t> vals;
    std::vector<std::vector<V>> layers;         // [t] -> per-eq partial value
    std::vector<std::vector<V>> bucket_prefix;  // [t] -> per-entry prefix product
    std::vector<std::vector<V>> inner_coeffs;   // [eq][exp] dynamic innermost part
    int max_inner_exp = 0;

    std::uint64_t solutions = 0;
    std::uint64_t witness_cap = 0;
    std::vector<std::vector<std::int64_t>>* witnesses = nullptr;
    std::vector<std::uint64_t>* hist = nullptr;

    explicit Runner(const BoxLadder& ladder, bool count_mode)
        : L(ladder), counting(count_mode) {
        vals.assign(L.nvars_, 0);
        layers.assign(L.nvars_ + 1, std::vector<V>(L.num_eqs_));
        layers[0] = L.constants_;
        bucket_prefix.assign(L.buckets_.size(), {});
        inner_coeffs.assign(L.num_eqs_, {});
        for (int k = 0; k < L.num_eqs_; ++k)
            for (const auto& e : L.inner_dynamic_[k])
                max_inner_exp = std::max(max_inner_exp, e.top_exp);
    }

    V reduced(std::int64_t v) const {
        return L.modulus_ != 0 ? detail::normalize_mod(V(v), L.modulus_) : V(v);
    }

    // Prefix products of the depth-t bucket; valid while vals[0..t-1] hold.
    void prepare_depth(int t) {
        const auto& bucket = L.buckets_[t];
        auto& pref = bucket_prefix[t];
        pref.resize(bucket.size());
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            V p = bucket[i].coeff;
            for (const auto& [var, exp] : bucket[i].prefix_facs)
                p = L.mul(p, detail::pow_small(reduced(vals[var]), exp, L.modulus_));
            pref[i] = p;
        }
    }

    // Assigns vals[t] = v, extends the ladder by the depth-t bucket and
    // tests every equation that becomes fully determined here.
    bool assign(int t, std::int64_t v) {
        vals[t] = v;
        const V x = reduced(v);
        layers[t + 1] = layers[t];
        const auto& bucket = L.buckets_[t];
        const auto& pref = bucket_prefix[t];
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            const auto& e = bucket[i];
            layers[t + 1][e.eq] =
                L.add(layers[t + 1][e.eq],
                      L.mul(pref[i], detail::pow_small(x, e.top_exp, L.modulus_)));
        }
        if (counting)
            for (int k = 0; k < L.num_eqs_; ++k)
                if (L.det_depth_[k] == t && layers[t + 1][k] != 0) return false;
        return true;
    }

    void record_solution() {
        if (witnesses && solutions < witness_cap) witnesses->push_back(vals);
        ++solutions;
    }

    void prepare_inner() {
        for (int k = 0; k < L.num_eqs_; ++k) {
            if (L.inner_dynamic_[k].empty()) continue;
            auto& c = inner_coeffs[k];
            c.assign(max_inner_exp + 1, V(0));
            for (const auto& e : L.inner_dynamic_[k]) {
                V p = e.coeff;
                for (const auto& [var, exp] : e.prefix_facs)
                    p = L.mul(p, detail::pow_small(reduced(vals[var]), exp, L.modulus_));
                c[e.top_exp] = L.add(c[e.top_exp], p);
            }
        }
    }

    V inner_value(int k, std::size_t slot, const V& x) const {
        V val = layers[L.nvars_ - 1][k];
        if (!L.inner_table_[k].empty()) val = L.add(val, L.inner_table_[k][slot]);
        if (!L.inner_dynamic_[k].empty()) {
            const auto& c = inner_coeffs[k];
            V h = 0;
            for (int e = max_inner_exp; e >= 1; --e) {
                h = L.mul(h, x);
                h = L.add(h, c[e]);
            }
            val = L.add(val, L.mul(h, x));
        }
        return val;
    }

    // Evaluates the single fully-assigned point with the last coordinate
    // pinned to v (used for full prefixes and last-variable chunks, where
    // the innermost monomials are not covered by any bucket).
    void check_single_leaf(std::int64_t v) {
        prepare_inner();
        const V x = reduced(v);
        for (int k = 0; k < L.num_eqs_; ++k)
            if (inner_value(k, static_cast<std::size_t>(v - L.lo_), x) != 0) return;
        vals[L.nvars_ - 1] = v;
        record_solution();
    }

    void leaf_loop() {
        const int t = L.nvars_ - 1;
        prepare_inner();
        const std::int64_t lo = L.lo_, hi = L.hi_;
        if (hist) {
            auto& h = *hist;
            const auto& base = layers[t][0];
            if (L.all_inner_static_ && !L.inner_table_[0].empty()) {
                const auto& tbl = L.inner_table_[0];
                for (std::int64_t v = lo; v <= hi; ++v)
                    ++h[static_cast<std::size_t>(L.add(base, tbl[v - lo]))];
            } else {
                for (std::int64_t v = lo; v <= hi; ++v)
                    ++h[static_cast<std::size_t>(inner_value(0, v - lo, reduced(v)))];
            }
            return;
        }
        if (!witnesses && L.all_inner_static_ && L.num_eqs_ == 1 &&
            !L.inner_table_[0].empty()) {
            // Dominant fast path: one equation whose innermost slice does not
            // depend on the prefix.
            const auto& tbl = L.inner_table_[0];
            const V base = layers[t][0];
            std::uint64_t c = 0;
            if (L.modulus_ == 0) {
                for (std::size_t i = 0; i < tbl.size(); ++i) c += (base + tbl[i]) == 0;
            } else {
                const V m = L.modulus_;
                for (std::size_t i = 0; i < tbl.size(); ++i) {
                    V x = base + tbl[i];
                    if (x >= m) x -= m;
                    c += x == 0;
                }
            }
            solutions += c;
            return;
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
            const V x = reduced(v);
            bool ok = true;
            for (int k = 0; k < L.num_eqs_ && ok; ++k)
                ok = inner_value(k, v - lo, x) == 0;
            if (ok) {
                vals[t] = v;
                record_solution();
            }
        }
    }

    void descend(int t) {
        if (t == L.nvars_ - 1) {
            leaf_loop();
            return;
        }
        prepare_depth(t);
        for (std::int64_t v = L.lo_; v <= L.hi_; ++v)
            if (assign(t, v)) descend(t + 1);
    }
};

template <class V>
EnumResult BoxLadder<V>::count(const std::vector<std::int64_t>& prefix,
                               const RunConfig& cfg, std::uint64_t witness_cap,
                               std::vector<std::vector<std::int64_t>>* witnesses) const {
    const int fixed = static_cast<int>(prefix.size());
    if (fixed > nvars_) throw std::invalid_argument("prefix longer than coordinate count");
    for (std::int64_t v : prefix)
        if (v < lo_ || v > hi_) throw std::invalid_argument("prefix value outside box");

    const std::uint64_t side = static_cast<std::uint64_t>(hi_ - lo_ + 1);
    require_within_limit(box_points(side, nvars_ - fixed), cfg);

    // An equation with no variable content is decided by its constant.
    for (int k = 0; k < num_eqs_; ++k)
        if (det_depth_[k] < 0 && constants_[k] != 0) return {0, 1};

    // Assigns the pinned coordinates up to (not including) depth `upto`.
    auto seed_to = [&](Runner& r, int upto) -> bool {
        for (int t = 0; t < upto; ++t) {
            r.prepare_depth(t);
            if (!r.assign(t, prefix[t])) return false;
        }
        return true;
    };

    if (fixed == nvars_) {
        Runner r(*this, true);
        r.witness_cap = witness_cap;
        r.witnesses = witnesses;
        if (seed_to(r, nvars_ - 1)) r.check_single_leaf(prefix[nvars_ - 1]);
        return {r.solutions, 1};
    }

    const std::uint64_t nchunks = side;
    std::vector<std::uint64_t> counts(nchunks, 0);
    std::vector<std::vector<std::vector<std::int64_t>>> wit_parts(
        witnesses ? nchunks : 0);

    parallel_chunks(nchunks, resolve_threads(cfg.threads), [&](std::uint64_t chunk) {
        Runner r(*this, true);
        if (witnesses) {
            r.witness_cap = witness_cap;
            r.witnesses = &wit_parts[chunk];
        }
        const std::int64_t v0 = lo_ + static_cast<std::int64_t>(chunk);
        if (!seed_to(r, fixed)) return;
        if (fixed == nvars_ - 1) {
            r.check_single_leaf(v0);
        } else {
            r.prepare_depth(fixed);
            if (r.assign(fixed, v0)) r.descend(fixed + 1);
        }
        counts[chunk] = r.solutions;
    });

    EnumResult out;
    out.partitions = nchunks;
    for (std::uint64_t c : counts) out.count += c;
    if (witnesses)
        for (auto& part : wit_parts)
            for (auto& w : part) {
                if (witnesses->size() >= witness_cap) break;
                witnesses->push_back(std::move(w));
            }
    return out;
}

template <class V>
std::vector<std::uint64_t> BoxLadder<V>::histogram(const RunConfig& cfg) const {
    if constexpr (std::is_same_v<V, BigInt>) {
        throw std::logic_error("histogram requires a machine-word modulus");
    } else {
        if (num_eqs_ != 1) throw std::logic_error("histogram expects a single value polynomial");
        if (modulus_ <= 0) throw std::logic_error("histogram requires a positive modulus");
        const std::uint64_t side = static_cast<std::uint64_t>(hi_ - lo_ + 1);
        require_within_limit(box_points(side, nvars_), cfg);

        const std::size_t bins = static_cast<std::size_t>(modulus_);
        if (nvars_ == 1) {
            Runner r(*this, false);
            std::vector<std::uint64_t> h(bins, 0);
            r.hist = &h;
            r.leaf_loop();
            return h;
        }
        const std::uint64_t nchunks = side;
        std::vector<std::vector<std::uint64_t>> parts(nchunks);
        parallel_chunks(nchunks, resolve_threads(cfg.threads), [&](std::uint64_t chunk) {
            Runner r(*this, false);
            std::vector<std::uint64_t> h(bins, 0);
            r.hist = &h;
            r.prepare_depth(0);
            r.assign(0, lo_ + static_cast<std::int64_t>(chunk));
            r.descend(1);
            parts[chunk] = std::move(h);
        });
        std::vector<std::uint64_t> total(bins, 0);
        for (const auto& part : parts)
            for (std::size_t i = 0; i < bins; ++i) total[i] += part[i];
        return total;
    }
}

template class BoxLadder<std::int64_t>;
template class BoxLadder<BigInt>;

bool int64_ladder_safe(const std::vector<const Poly*>& eqs,
                       const std::vector<BigInt>& targets, std::int64_t lo,
                       std::int64_t hi) {
    const BigInt cap = BigInt(1) << 62;
    const BigInt maxabs = std::max<BigInt>(lo < 0 ? BigInt(-lo) : BigInt(lo),
                                           hi < 0 ? BigInt(-hi) : BigInt(hi));
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        BigInt bound = targets[k] < 0 ? BigInt(-targets[k]) : targets[k];
        for (const auto& [exps, coeff] : eqs[k]->terms()) {
            int deg = 0;
            for (int e : exps) deg += e;
            bound += (coeff < 0 ? BigInt(-coeff) : coeff) * big_pow(maxabs, deg);
        }
        if (bound > cap) return false;
    }
    return true;
}

EnumResult count_zeros(const std::vector<const Poly*>& eqs,
                       const std::vector<BigInt>& targets, int nvars,
                       std::int64_t lo, std::int64_t hi, const BigInt& modulus,
                       const std::vector<std::int64_t>& prefix, const RunConfig& cfg,
                       std::uint64_t witness_cap,
                       std::vector<std::vector<std::int64_t>>* witnesses) {
    if (modulus != 0) {
        if (modulus < (BigInt(1) << 31)) {
            BoxLadder<std::int64_t> ladder(eqs, targets, nvars, lo, hi,
                                           to_int64(modulus));
            return ladder.count(prefix, cfg, witness_cap, witnesses);
        }
        BoxLadder<BigInt> ladder(eqs, targets, nvars, lo, hi, modulus);
        return ladder.count(prefix, cfg, witness_cap, witnesses);
    }
    if (int64_ladder_safe(eqs, targets, lo, hi)) {
        BoxLadder<std::int64_t> ladder(eqs, targets, nvars, lo, hi, 0);
        return ladder.count(prefix, cfg, witness_cap, witnesses);
    }
    BoxLadder<BigInt> ladder(eqs, targets, nvars, lo, hi, BigInt(0));
    return ladder.count(prefix, cfg, witness_cap, witnesses);
}

}  // namespace formcount
