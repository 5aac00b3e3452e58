#ifndef SPARSECARD_GADGET_HPP
#define SPARSECARD_GADGET_HPP

#include <cstdint>
#include <vector>

#include "sparsecard/concave.hpp"

namespace sparsecard {

// Parameters of a k-node combined gadget function of order J:
//   l(x) = z0*(k-x) + zk*x + sum_j a_j * min{x*(k-b_j), (k-x)*b_j}
// with a_j > 0 and 0 < b_1 < ... < b_J < k.
struct CGFParams {
    std::int64_t k = 0;
    double z0 = 0.0;
    double zk = 0.0;
    std::vector<double> a;
    std::vector<double> b;

    void validate() const;
};

// Parameters of a type-r symmetric combined gadget function:
//   l(x) = sum_j a_j * min{x, b_j}
// with a_j > 0 and 0 < b_1 < ... < b_J <= r.
struct SymCGFParams {
    std::int64_t r = 0;
    std::vector<double> a;
    std::vector<double> b;

    void validate() const;
};

double eval_cgf(const CGFParams& p, double x);
double eval_sym_cgf(const SymCGFParams& p, double x);

enum class EdgeRole { SourceToSupport, SupportToSink, SupportToAux, AuxToSupport, AuxToAux };

struct GadgetEdge {
    std::int64_t tail = 0;
    std::int64_t head = 0;
    double weight = 0.0;
    EdgeRole role = EdgeRole::SupportToAux;
};

// One CB-gadget as built: its (a,b) parameters and family.
struct CbGadgetDesc {
    bool symmetric = false;
    double a = 0.0;
    double b = 0.0;
};

// Emitted edge list for one component. Local node indexing: support nodes
// 0..k-1, auxiliary nodes k..k+aux_count-1, then s, t.
struct GadgetGraph {
    std::int64_t support_size = 0;
    std::int64_t aux_count = 0;
    double z0 = 0.0;
    double zk = 0.0;
    std::vector<CbGadgetDesc> gadgets;
    std::vector<GadgetEdge> edges;

    std::int64_t source_index() const { return support_size + aux_count; }
    std::int64_t sink_index() const { return support_size + aux_count + 1; }
    std::int64_t node_count() const { return support_size + aux_count + 2; }
};

// Lemma-1 conversions.
CGFParams pl_to_cgf(const PLFunction& pl);
PLFunction cgf_to_pl(const CGFParams& p);

// Symmetric analog: pl must be in class F_r (value 0 at 0, nondecreasing,
// concave, flat final piece).
SymCGFParams sym_pl_to_cgf(const PLFunction& pl);

GadgetGraph cgf_to_gadget(const CGFParams& p);
GadgetGraph sym_cgf_to_gadget(const SymCGFParams& p, std::int64_t k);

// Size-1 supports skip the cover/CGF machinery: only a source edge of weight
// g(0) and a sink edge of weight g(1) are needed.
GadgetGraph unary_gadget(double g0, double g1);

// Analytic minimum over auxiliary placements when exactly `cardinality`
// support nodes sit on the source side.
double gadget_cut_eval(const GadgetGraph& gg, std::int64_t cardinality);

}  // namespace sparsecard

#endif
