#pragma once

// Exact Mellin integrals I(s1,...,s5) over the unit square against
// omega = dx dy/(1-xy), computed by composing 2x2 contiguity matrices along
// an admissible path from the origin. The recursion state at s is the pair
// (I(s), I(s1,...,s4,s5+1)); the initial state is (zeta(2), 1).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <vector>

#include "periodgram/exponents.hpp"
#include "periodgram/linear_form.hpp"
#include "periodgram/rational.hpp"

namespace periodgram {

struct Mat2Q {
    Rational m[2][2];

    friend Mat2Q operator*(const Mat2Q& a, const Mat2Q& b) {
        Mat2Q c;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                c.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return c;
    }
    friend bool operator==(const Mat2Q& a, const Mat2Q& b) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!(a.m[i][j] == b.m[i][j])) return false;
        return true;
    }
    Rational det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

struct PeriodState {
    LinearForm first;   // I(s)
    LinearForm second;  // I(tau_5 s)

    friend PeriodState operator*(const Mat2Q& a, const PeriodState& v) {
        return {a.m[0][0] * v.first + a.m[0][1] * v.second,
                a.m[1][0] * v.first + a.m[1][1] * v.second};
    }
};

namespace detail {

// The two linear factors in the denominator of M_i, as values at s and as
// printable names. M_i is finite iff both are nonzero.
inline std::array<std::pair<long, const char*>, 2> pole_factors(int i, const Exp5& a) {
    switch (i) {
        case 1: return {{{a[3], "a4"}, {1 + a[2], "1+a3"}}};
        case 2: return {{{a[3], "a4"}, {a[4], "a5"}}};
        case 3: return {{{a[0], "a1"}, {a[4], "a5"}}};
        case 4: return {{{a[0], "a1"}, {1 + a[1], "1+a2"}}};
        case 5: return {{{1 + a[1], "1+a2"}, {1 + a[2], "1+a3"}}};
        default: throw Error("pole_factors: index out of range");
    }
}

}  // namespace detail

inline bool contiguity_finite(int i, const Exp5& s) {
    Exp5 a = a_params(s);
    for (const auto& [value, name] : detail::pole_factors(i, a))
        if (value == 0) return false;
    return true;
}

// The shift matrix M_i(s) taking the state at s to the state at s + e_i.
inline Mat2Q contiguity_matrix(int i, const Exp5& s) {
    Exp5 a = a_params(s);
    for (const auto& [value, name] : detail::pole_factors(i, a))
        if (value == 0) throw PoleError(i, std::string(name) + " = 0", to_string(s));

    const long a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4];
    long num[2][2];
    long den = 1;
    switch (i) {
        case 1:
            den = a4 * (1 + a3);
            num[0][0] = (1 + a3) * (a5 - a1);
            num[0][1] = (1 + a3) * a2;
            num[1][0] = (a1 + a4 - a5) * (a5 - 1);
            num[1][1] = (1 - a1 + a2) * a4 - a2 * (a5 - 1);
            break;
        case 2:
            den = a4 * a5;
            num[0][0] = (a1 - a2) * a4 + a3 * (a5 - a1);
            num[0][1] = a2 * a3;
            num[1][0] = (a1 + a4 - a5) * a5;
            num[1][1] = -a2 * a5;
            break;
        case 3:
            den = a1 * a5;
            num[0][0] = (a4 - a3) * a1 + a2 * (a5 - a4);
            num[0][1] = a2 * a3;
            num[1][0] = (a1 + a4 - a5) * a5;
            num[1][1] = -a3 * a5;
            break;
        case 4:
            den = a1 * (1 + a2);
            num[0][0] = (1 + a2) * (a5 - a4);
            num[0][1] = (1 + a2) * a3;
            num[1][0] = (a1 + a4 - a5) * (a5 - 1);
            num[1][1] = (a3 - a4 + 1) * a1 - a3 * (a5 - 1);
            break;
        case 5:
            den = (1 + a2) * (1 + a3);
            num[0][0] = 0;
            num[0][1] = (1 + a3) * (1 + a2);
            num[1][0] = (a1 + a4 - a5) * (a5 - 1);
            num[1][1] = (a4 - a5 + 1) * (a2 + 1) + (a1 - a5 + 1) * a3 + (1 - a4) * a1;
            break;
        default:
            throw Error("contiguity_matrix: index out of range");
    }
    Mat2Q out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.m[r][c] = make_rational(num[r][c], den);
    return out;
}

// Contiguity for shifting all five parameters at once, specialised to
// s1 = ... = s5 = n. Recovers the Apery recurrence along the diagonal.
inline Mat2Q apery_diagonal_matrix(long n) {
    if (n < 0) throw Error("apery_diagonal_matrix: n must be >= 0");
    Int d = Int(n + 2) * Int(n + 2);
    Mat2Q out;
    out.m[0][0] = Rational(-3);
    out.m[0][1] = Rational(5);
    out.m[1][0] = make_rational(Int(5 * n * n + 13 * n + 8), d);
    out.m[1][1] = make_rational(-Int(8 * n * n + 21 * n + 13), d);
    return out;
}

// Memoized recursion over lattice paths. Backward search from the target,
// preferring to step down the coordinate with the largest current value;
// backtracks over the remaining coordinates when a matrix has a pole.
class MellinTable {
public:
    // The value I(s). If the recursion is blocked for this orientation of s
    // (all increment orders hit a pole, which happens for patterns like
    // (2,0,0,2,0)), fall back to the dihedral images: the integral is
    // invariant under them and some rotation is always found in practice.
    LinearForm integral(const Exp5& s) {
        for (long v : s)
            if (v < 0) throw Error("mellin_integral: exponents must be >= 0");
        Exp5 key = dihedral_orbit(s);
        {
            std::shared_lock lock(mutex_);
            auto it = values_.find(key);
            if (it != values_.end()) return it->second;
        }
        std::vector<Exp5> blocked;
        auto images = dihedral_images(key);
        std::sort(images.begin(), images.end());
        for (const Exp5& image : images) {
            auto st = try_state(image, blocked);
            if (st) {
                std::unique_lock lock(mutex_);
                values_.emplace(key, st->first);
                return st->first;
            }
        }
        std::string diag = "mellin_integral: no admissible path to " + to_string(s) +
                           " in any dihedral orientation; blocked states:";
        for (size_t i = 0; i < blocked.size() && i < 12; ++i)
            diag += " " + to_string(blocked[i]);
        throw PathNotFound(diag);
    }

    // The pair (I(s), I(tau5 s)). Orientations whose path search is blocked
    // are assembled from the two values through the dihedral fallback.
    PeriodState state(const Exp5& s) {
        std::vector<Exp5> blocked;
        auto st = try_state(s, blocked);
        if (st) return *st;
        Exp5 t5 = s;
        ++t5[4];
        return {integral(s), integral(t5)};
    }

    // Follows a forced coordinate priority instead of the default heuristic
    // (used to exercise path independence); no memo is consulted.
    PeriodState state_with_priority(const Exp5& s, const std::array<int, 5>& priority) const {
        if (s == Exp5{0, 0, 0, 0, 0}) return initial_state();
        for (int idx : priority) {
            if (s[static_cast<size_t>(idx)] == 0) continue;
            Exp5 prev = s;
            --prev[static_cast<size_t>(idx)];
            if (!contiguity_finite(idx + 1, prev)) continue;
            return contiguity_matrix(idx + 1, prev) * state_with_priority(prev, priority);
        }
        throw PathNotFound("state_with_priority: blocked at " + to_string(s));
    }

    // Cache access for checkpointing (canonical exponent vector -> I value).
    std::map<Exp5, LinearForm> snapshot() const {
        std::shared_lock lock(mutex_);
        return values_;
    }
    void preload(const std::map<Exp5, LinearForm>& values) {
        std::unique_lock lock(mutex_);
        for (const auto& [k, v] : values) values_.emplace(k, v);
    }

    static PeriodState initial_state() {
        return {LinearForm::xi(), LinearForm::one()};  // (zeta(2), 1)
    }

private:
    std::optional<PeriodState> try_state(const Exp5& s, std::vector<Exp5>& blocked) {
        if (s == Exp5{0, 0, 0, 0, 0}) return initial_state();
        {
            std::shared_lock lock(mutex_);
            auto it = states_.find(s);
            if (it != states_.end()) return it->second;
            if (failed_.count(s)) return std::nullopt;
        }
        std::array<int, 5> order{0, 1, 2, 3, 4};
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            if (s[static_cast<size_t>(x)] != s[static_cast<size_t>(y)])
                return s[static_cast<size_t>(x)] > s[static_cast<size_t>(y)];
            return x < y;
        });
        for (int idx : order) {
            if (s[static_cast<size_t>(idx)] == 0) continue;
            Exp5 prev = s;
            --prev[static_cast<size_t>(idx)];
            if (!contiguity_finite(idx + 1, prev)) continue;
            auto sub = try_state(prev, blocked);
            if (!sub) continue;
            PeriodState st = contiguity_matrix(idx + 1, prev) * *sub;
            std::unique_lock lock(mutex_);
            states_.emplace(s, st);
            return st;
        }
        blocked.push_back(s);
        std::unique_lock lock(mutex_);
        failed_.insert(s);
        return std::nullopt;
    }

    mutable std::shared_mutex mutex_;
    std::map<Exp5, PeriodState> states_;
    std::map<Exp5, LinearForm> values_;
    std::set<Exp5> failed_;
};

inline MellinTable& mellin_table() {
    static MellinTable table;
    return table;
}

inline LinearForm mellin_integral(const Exp5& s) { return mellin_table().integral(s); }

}  // namespace periodgram
