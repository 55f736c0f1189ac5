#include "stratloc/cone.hpp"

#include <algorithm>
#include <functional>

#include "stratloc/error.hpp"

namespace stratloc {

namespace {

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec to_ratvec(const Weight& w) {
    RatVec v;
    v.reserve(w.v.size());
    for (auto c : w.v) v.emplace_back(c);
    return v;
}

/// Row-reduce [A | b] in place; returns one solution of A x = b when the
/// system is consistent and the columns of A are independent, nullopt on
/// inconsistency.  Columns of A beyond the rank make the solution
/// non-unique and are rejected with nullopt as well.
std::optional<RatVec> solve_exact(std::vector<RatVec> rows, RatVec rhs, std::size_t ncols) {
    const std::size_t nrows = rows.size();
    std::vector<int> pivot_col_of_row(nrows, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t p = rank;
        while (p < nrows && rows[p][col] == 0) ++p;
        if (p == nrows) continue;
        std::swap(rows[p], rows[rank]);
        std::swap(rhs[p], rhs[rank]);
        const Rat inv = rows[rank][col];
        for (auto& x : rows[rank]) x /= inv;
        rhs[rank] /= inv;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rat f = rows[r][col];
            for (std::size_t c = 0; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
            rhs[r] -= f * rhs[rank];
        }
        pivot_col_of_row[rank] = static_cast<int>(col);
        ++rank;
    }
    for (std::size_t r = rank; r < nrows; ++r)
        if (rhs[r] != 0) return std::nullopt; // inconsistent
    if (rank < ncols) return std::nullopt;    // dependent columns
    RatVec x(ncols, Rat(0));
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col_of_row[r]] = rhs[r];
    return x;
}

} // namespace

bool in_cone(const std::vector<Weight>& gens, const Weight& target) {
    const std::size_t r = target.rank();
    bool zero = true;
    for (auto c : target.v) zero = zero && c == 0;
    if (zero) return true;
    const std::size_t m = gens.size();
    const std::size_t maxk = std::min(m, r);
    std::vector<std::size_t> subset;
    // Enumerate subsets of size <= rank in lexicographic DFS order.
    auto try_subset = [&](const std::vector<std::size_t>& s) {
        std::vector<RatVec> rows(r, RatVec(s.size(), Rat(0)));
        for (std::size_t j = 0; j < s.size(); ++j)
            for (std::size_t i = 0; i < r; ++i) rows[i][j] = Rat(gens[s[j]].v[i]);
        RatVec rhs = to_ratvec(target);
        auto x = solve_exact(std::move(rows), std::move(rhs), s.size());
        if (!x) return false;
        for (const auto& c : *x)
            if (c < 0) return false;
        return true;
    };
    std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
        if (!subset.empty() && try_subset(subset)) return true;
        if (subset.size() == maxk) return false;
        for (std::size_t i = start; i < m; ++i) {
            subset.push_back(i);
            if (dfs(i + 1)) return true;
            subset.pop_back();
        }
        return false;
    };
    return dfs(0);
}

RatVec project_to_cone(const std::vector<Weight>& constraints, const RatVec& v) {
    const std::size_t r = v.size();
    const std::size_t m = constraints.size();
    std::vector<RatVec> a;
    a.reserve(m);
    for (const auto& w : constraints) {
        if (w.rank() != r) throw input_error("cone constraint has wrong rank");
        a.push_back(to_ratvec(w));
    }
    auto feasible = [&](const RatVec& q) {
        for (const auto& row : a)
            if (dot(row, q) < 0) return false;
        return true;
    };

    std::optional<RatVec> best;
    Rat best_dist = 0;
    auto consider = [&](const RatVec& q) {
        RatVec diff(r);
        for (std::size_t i = 0; i < r; ++i) diff[i] = v[i] - q[i];
        const Rat dist = dot(diff, diff);
        if (!best || dist < best_dist) {
            best = q;
            best_dist = dist;
        } else if (dist == best_dist && !(*best == q)) {
            throw error("internal: cone projection is not unique");
        }
    };

    if (feasible(v)) consider(v);
    const std::size_t maxk = std::min(m, r);
    std::vector<std::size_t> subset;
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
        if (!subset.empty()) {
            const std::size_t k = subset.size();
            std::vector<RatVec> gram(k, RatVec(k, Rat(0)));
            RatVec rhs(k, Rat(0));
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(a[subset[i]], a[subset[j]]);
                rhs[i] = dot(a[subset[i]], v);
            }
            auto y = solve_exact(std::move(gram), std::move(rhs), k);
            if (y) {
                RatVec q = v;
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t c = 0; c < r; ++c) q[c] -= (*y)[i] * a[subset[i]][c];
                if (feasible(q)) consider(q);
            }
        }
        if (subset.size() == maxk) return;
        for (std::size_t i = start; i < m; ++i) {
            subset.push_back(i);
            dfs(i + 1);
            subset.pop_back();
        }
    };
    dfs(0);
    if (!best) throw error("internal: cone projection found no feasible candidate");
    return *best;
}

std::optional<RatVec> feasible_point(const std::vector<std::pair<RatVec, Rat>>& constraints,
                                     std::size_t dim) {
    if (dim == 0) {
        for (const auto& [a, b] : constraints)
            if (b < 0) return std::nullopt;
        return RatVec{};
    }
    // Eliminate the last variable.
    std::vector<std::pair<RatVec, Rat>> reduced;      // constraints without x_last
    std::vector<std::pair<RatVec, Rat>> lower, upper; // x_last >= l(x'), x_last <= u(x')
    for (const auto& [a, b] : constraints) {
        if (a.size() != dim) throw input_error("constraint has wrong dimension");
        const Rat c = a[dim - 1];
        RatVec rest(a.begin(), a.end() - 1);
        if (c == 0) {
            reduced.emplace_back(std::move(rest), b);
        } else if (c > 0) { // x <= (b - rest.x')/c
            for (auto& t : rest) t /= c;
            upper.emplace_back(std::move(rest), b / c);
        } else {
            for (auto& t : rest) t /= c;
            lower.emplace_back(std::move(rest), b / c);
        }
    }
    for (const auto& [la, lb] : lower)
        for (const auto& [ua, ub] : upper) {
            // lb - la.x' <= x <= ub - ua.x'  =>  (ua - la).x' <= ub - lb
            RatVec row(dim - 1);
            for (std::size_t i = 0; i + 1 < dim; ++i) row[i] = ua[i] - la[i];
            reduced.emplace_back(std::move(row), ub - lb);
        }
    if (reduced.size() > 200000) throw error("feasibility elimination exceeded size budget");
    auto rest = feasible_point(reduced, dim - 1);
    if (!rest) return std::nullopt;
    std::optional<Rat> lo, hi;
    for (const auto& [la, lb] : lower) {
        Rat bound = lb - dot(la, *rest);
        if (!lo || bound > *lo) lo = bound;
    }
    for (const auto& [ua, ub] : upper) {
        Rat bound = ub - dot(ua, *rest);
        if (!hi || bound < *hi) hi = bound;
    }
    Rat x;
    if (lo && hi)
        x = (*lo + *hi) / 2;
    else if (lo)
        x = *lo;
    else if (hi)
        x = *hi;
    else
        x = 0;
    rest->push_back(x);
    return rest;
}

std::optional<Cocharacter> strictly_negative_functional(std::size_t rank,
                                                        const std::vector<Weight>& weights) {
    if (weights.empty()) return Cocharacter{std::vector<std::int64_t>(rank, 0)};
    std::vector<std::pair<RatVec, Rat>> constraints;
    constraints.reserve(weights.size());
    for (const auto& w : weights) {
        if (w.rank() != rank) throw input_error("weight has wrong rank");
        constraints.emplace_back(to_ratvec(w), Rat(-1));
    }
    auto point = feasible_point(constraints, rank);
    if (!point) return std::nullopt;
    Int scale = 1;
    for (const auto& c : *point) scale = scale / gcd(scale, c.get_den()) * c.get_den();
    Cocharacter eta{std::vector<std::int64_t>(rank, 0)};
    for (std::size_t i = 0; i < rank; ++i) {
        Rat scaled = (*point)[i] * Rat(scale);
        if (scaled.get_den() != 1) throw error("internal: functional scaling failed");
        if (!scaled.get_num().fits_slong_p()) throw error("functional exceeds integer range");
        eta.v[i] = static_cast<std::int64_t>(scaled.get_num().get_si());
    }
    return eta;
}

Cocharacter integral_direction(const RatVec& q) {
    Int scale = 1;
    for (const auto& c : q) scale = scale / gcd(scale, c.get_den()) * c.get_den();
    std::vector<Int> ints;
    ints.reserve(q.size());
    bool all_zero = true;
    for (const auto& c : q) {
        Rat scaled = c * Rat(scale);
        ints.push_back(scaled.get_num());
        all_zero = all_zero && scaled.get_num() == 0;
    }
    if (all_zero) throw input_error("zero vector has no direction");
    Int g = 0;
    for (const auto& x : ints) g = gcd(g, x);
    Cocharacter out{std::vector<std::int64_t>(q.size(), 0)};
    for (std::size_t i = 0; i < q.size(); ++i) {
        Int reducedv = ints[i] / g;
        if (!reducedv.fits_slong_p()) throw error("direction exceeds integer range");
        out.v[i] = static_cast<std::int64_t>(reducedv.get_si());
    }
    return out;
}

} // namespace stratloc
