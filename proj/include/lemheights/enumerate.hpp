#pragma once

#include "lemheights/polynomial.hpp"

#include <algorithm>
#include <vector>

namespace lemni {

// Canonical enumeration of a coefficient box: nonzero integer polynomials of
// degree in [min_degree, max_degree] with coefficients in [-bound, bound],
// sign-normalized to a positive leading coefficient (so P and -P never both
// appear). Monic boxes fix the lead at 1. Order is deterministic: degree
// ascending, then an odometer over the lower coefficients from the constant
// term up.
class CoeffBox {
public:
    CoeffBox(int min_degree, int max_degree, long bound, bool monic)
        : min_degree_(min_degree), max_degree_(max_degree), bound_(bound), monic_(monic) {}

    long long count() const {
        long long total = 0;
        long long width = 2 * bound_ + 1;
        for (int d = std::max(0, min_degree_); d <= max_degree_; ++d) {
            long long lead = monic_ ? 1 : bound_;
            long long lower = 1;
            for (int i = 0; i < d; ++i) {
                if (lower > (1LL << 62) / width) return -1;  // overflow: treat as "huge"
                lower *= width;
            }
            total += lead * lower;
        }
        return total;
    }

    // fn(const IntPolynomial&) for every candidate whose enumeration index is
    // congruent to shard modulo n_shards.
    template <typename Fn>
    void for_each_shard(long long shard, long long n_shards, Fn&& fn) const {
        long long index = 0;
        std::vector<long> c;
        for (int d = std::max(0, min_degree_); d <= max_degree_; ++d) {
            c.assign(d + 1, 0);
            for (long lead = 1; lead <= (monic_ ? 1 : bound_); ++lead) {
                c[d] = lead;
                for (int i = 0; i < d; ++i) c[i] = -bound_;
                while (true) {
                    if (index % n_shards == shard) {
                        std::vector<Int> coeffs(c.size());
                        for (std::size_t i = 0; i < c.size(); ++i) coeffs[i] = c[i];
                        fn(IntPolynomial(std::move(coeffs)));
                    }
                    ++index;
                    int pos = 0;
                    while (pos < d && c[pos] == bound_) {
                        c[pos] = -bound_;
                        ++pos;
                    }
                    if (pos >= d) break;
                    ++c[pos];
                }
            }
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for_each_shard(0, 1, std::forward<Fn>(fn));
    }

private:
    int min_degree_;
    int max_degree_;
    long bound_;
    bool monic_;
};

}  // namespace lemni
