#pragma once

#include <cstdint>
#include <random>

#include "pwmod/piecewise.hpp"

namespace pwmod {

/// Deterministic generator for test inputs. Draws are taken modulo the raw
/// mt19937_64 stream (uniform_int_distribution is not portable across
/// standard libraries; this is).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    uint64_t next() { return eng(); }
    long uniform(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    double unit() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

    /// Rational with numerator in [-max_num, max_num] and denominator a
    /// power of two up to 2^max_den_pow.
    Rat small_rat(long max_num = 8, int max_den_pow = 3) {
        long num = uniform(-max_num, max_num);
        long den = 1L << uniform(0, max_den_pow);
        return Rat(num, den);
    }

    Rat small_rat_nonzero(long max_num = 8, int max_den_pow = 3) {
        for (;;) {
            Rat r = small_rat(max_num, max_den_pow);
            if (!r.is_zero()) return r;
        }
    }

    /// Point in (0,1) on a fine dyadic grid.
    Rat unit_point(int den_pow = 10) {
        long den = 1L << den_pow;
        return Rat(uniform(1, den - 1), den);
    }

    /// Polynomial of degree <= max_deg with small rational coefficients.
    Poly<Rat> poly(int max_deg = 3, long max_num = 8) {
        std::vector<Rat> c;
        int deg = static_cast<int>(uniform(0, max_deg));
        for (int i = 0; i <= deg; ++i) c.push_back(small_rat(max_num));
        return Poly<Rat>(std::move(c));
    }

    /// W^{1,2}[0,1] test function: a cubic polynomial or a piecewise-linear
    /// hat profile with random node values (continuous, derivative broken).
    PiecewiseFn<Rat> test_function() {
        if (next() % 2 == 0) {
            return PiecewiseFn<Rat>::from_poly(poly(3));
        }
        int nodes = static_cast<int>(uniform(2, 5));
        std::vector<Rat> xs{Rat(0)};
        for (int i = 1; i < nodes; ++i) xs.push_back(Rat(i, nodes));
        xs.push_back(Rat(1));
        std::vector<Rat> ys;
        for (size_t i = 0; i < xs.size(); ++i) ys.push_back(small_rat(4));
        std::vector<Poly<Rat>> pieces;
        for (size_t i = 0; i + 1 < xs.size(); ++i) {
            Rat slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            pieces.push_back(Poly<Rat>(std::vector<Rat>{ys[i], slope}));  // local at xs[i]
        }
        return PiecewiseFn<Rat>(std::move(xs), std::move(pieces));
    }

    /// Random piecewise polynomial (not necessarily continuous).
    PiecewiseFn<Rat> piecewise(int max_pieces = 4, int max_deg = 3) {
        int pieces = static_cast<int>(uniform(1, max_pieces));
        std::vector<Rat> xs{Rat(0)};
        for (int i = 1; i < pieces; ++i) xs.push_back(Rat(i, pieces));
        xs.push_back(Rat(1));
        std::vector<Poly<Rat>> ps;
        for (int i = 0; i < pieces; ++i) ps.push_back(poly(max_deg));
        return PiecewiseFn<Rat>(std::move(xs), std::move(ps));
    }

    /// Random interval union inside [0,1] with up to max_parts components.
    IntervalUnion interval_union(int max_parts = 4) {
        int cuts = 2 * static_cast<int>(uniform(1, max_parts));
        std::vector<long> raw;
        for (int i = 0; i < cuts; ++i) raw.push_back(uniform(0, 256));
        std::sort(raw.begin(), raw.end());
        std::vector<Interval> parts;
        for (int i = 0; i + 1 < cuts; i += 2) {
            if (raw[i] == raw[i + 1]) continue;
            parts.push_back({Rat(raw[i], 256), Rat(raw[i + 1], 256)});
        }
        return IntervalUnion(std::move(parts));
    }
};

}  // namespace pwmod
