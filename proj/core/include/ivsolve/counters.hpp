#pragma once

#include <cstdint>

namespace ivsolve {

// Per-run accumulators for primitive operation counts. The endpoint fields
// (adds..comparisons) count real scalar operations: one interval addition
// performs 2 real additions, one interval multiplication 4 real products and
// 6 comparisons, one interval division 2 reciprocal divisions plus the
// product cost.
//
// A counter instance is owned by a single run context and is not shared
// between threads; combining results from independent runs goes through
// merge().
struct OpCounters {
    std::uint64_t adds = 0;
    std::uint64_t subs = 0;
    std::uint64_t muls = 0;
    std::uint64_t divs = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t f_evals = 0;
    std::uint64_t j_evals = 0;
    std::uint64_t inversions = 0;
    std::uint64_t contractor_calls = 0;
    // Times a division inside a natural extension had to hull a two-piece
    // extended-division result (flagged in reports).
    std::uint64_t ext_div_hulls = 0;

    void reset() { *this = OpCounters{}; }

    void merge(const OpCounters& o) {
        adds += o.adds;
        subs += o.subs;
        muls += o.muls;
        divs += o.divs;
        comparisons += o.comparisons;
        f_evals += o.f_evals;
        j_evals += o.j_evals;
        inversions += o.inversions;
        contractor_calls += o.contractor_calls;
        ext_div_hulls += o.ext_div_hulls;
    }

    std::uint64_t total_real_ops() const {
        return adds + subs + muls + divs + comparisons;
    }

    // Number of interval-operation invocations reconstructed from the
    // endpoint counts: each add/sub call contributes 2 endpoint operations
    // and each multiplicative step 4 endpoint products (a division's two
    // reciprocal divisions are its own call, its product is already in muls).
    double interval_op_calls() const {
        return static_cast<double>(adds) / 2.0 + static_cast<double>(subs) / 2.0 +
               static_cast<double>(muls) / 4.0;
    }
};

} // namespace ivsolve
