#pragma once

#include "ivsolve/model.hpp"

namespace ivsolve {

struct ContractionResult {
    Box box;                     // contracted box, possibly empty
    bool changed = false;
    double width_reduction = 0.0; // box_diam(input) - box_diam(result)
};

// Forward-backward (HC4-style) revision of one constraint e(x,u) in target.
// The forward pass evaluates every node's natural extension; the backward
// pass intersects node ranges with inverted-operation projections seeded by
// `target` at the root. Returns the contracted state box; never removes any
// (x,u) with e(x,u) in target. Parameters are read-only: an infeasible
// parameter projection empties the box but U itself is never narrowed.
Box hc4_revise(const ExprPtr& e, const Interval& target, const Box& x, const Box& u,
               OpCounters& c);

// One contractor sweep: hc4_revise with target [0,0] for each equation in
// order, threading the shrinking box. Counts as one contractor call.
ContractionResult contract_system(const SystemModel& m, const Box& x, OpCounters& c);

} // namespace ivsolve
