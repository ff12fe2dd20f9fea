#include "formcount/spaces.hpp"

#include "formcount/counting.hpp"
#include "formcount/local.hpp"

#include <stdexcept>

namespace formcount {

int rank_rational(std::vector<std::vector<BigInt>> mat) {
    if (mat.empty()) return 0;
    const std::size_t rows = mat.size(), cols = mat[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && mat[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(mat[pivot], mat[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (mat[i][col] == 0) continue;
            const BigInt a = mat[row][col], b = mat[i][col];
            for (std::size_t j = col; j < cols; ++j)
                mat[i][j] = mat[i][j] * a - mat[row][j] * b;
        }
        ++row;
        ++rank;
    }
    return rank;
}

int rank_mod_p(std::vector<std::vector<std::int64_t>> mat, std::int64_t p) {
    if (mat.empty()) return 0;
    const std::size_t rows = mat.size(), cols = mat[0].size();
    for (auto& r : mat)
        for (auto& v : r) v = ((v % p) + p) % p;
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && mat[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(mat[pivot], mat[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (mat[i][col] == 0) continue;
            const std::int64_t a = mat[row][col], b = mat[i][col];
            for (std::size_t j = col; j < cols; ++j)
                mat[i][j] = ((mat[i][j] * a - mat[row][j] * b) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

int span_rank(const SpaceWitness& w) {
    if (w.modulus > 0) {
        return rank_mod_p(w.vectors, w.modulus);
    }
    std::vector<std::vector<BigInt>> mat;
    mat.reserve(w.vectors.size());
    for (const auto& row : w.vectors) mat.emplace_back(row.begin(), row.end());
    return rank_rational(std::move(mat));
}

namespace {

SpaceSearchResult search(const ExpandedSystem& es, std::int64_t lo, std::int64_t hi,
                         const BigInt& modulus, std::size_t cap, const RunConfig& cfg) {
    const TargetSystem zero = TargetSystem::zero(es.m(), es.degree(), es.num_forms());
    std::vector<const Poly*> eqs;
    std::vector<BigInt> targets;
    flatten_equations(es, zero, eqs, targets);

    std::vector<std::vector<std::int64_t>> flat;
    EnumResult res = count_zeros(eqs, targets, es.ms(), lo, hi, modulus, {}, cfg,
                                 cap, &flat);

    SpaceSearchResult out;
    out.total_count = res.count;
    out.modulus = modulus == 0 ? 0 : to_int64(modulus);
    const int s = es.s();
    for (const auto& point : flat) {
        SpaceWitness w;
        w.modulus = out.modulus;
        w.vectors.resize(es.m());
        for (int i = 0; i < es.m(); ++i)
            w.vectors[i].assign(point.begin() + i * s, point.begin() + (i + 1) * s);
        w.span_rank = span_rank(w);
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

}  // namespace

SpaceSearchResult find_spaces_mod_p(const ExpandedSystem& es, std::int64_t p,
                                    std::size_t cap, const RunConfig& cfg) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    SpaceSearchResult out = search(es, 0, p - 1, BigInt(p), cap, cfg);
    return out;
}

SpaceSearchResult find_spaces_height(const ExpandedSystem& es, std::int64_t H,
                                     std::size_t cap, const RunConfig& cfg) {
    if (H < 0) throw std::invalid_argument("height must be nonnegative");
    SpaceSearchResult out = search(es, -H, H, BigInt(0), cap, cfg);
    out.height = H;
    return out;
}

}  // namespace formcount
