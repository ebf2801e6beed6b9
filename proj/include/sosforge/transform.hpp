#pragma once

#include <map>
#include <unordered_map>

#include "sosforge/formulas.hpp"
#include "sosforge/graph.hpp"
#include "sosforge/sos.hpp"

namespace sosforge {

using Substitution = std::unordered_map<VarId, Polynomial>;

/// A bridge for source constraint i is a certificate over the target system
/// whose target is sigma(f_i). Bridges of equality constraints may only use
/// equality terms.
using Bridges = std::map<std::size_t, SosCertificate>;

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pushes cert through sigma: every use of source constraint i is replaced by
/// the substituted multiplier times the bridge for i. Throws TransformError on
/// a missing or invalid bridge.
SosCertificate substitute_certificate(const ConstraintSystem& source, const SosCertificate& cert,
                                      const Substitution& sigma, const ConstraintSystem& target,
                                      const Bridges& bridges);

/// Derives 1 - x_u - x_v >= 0 for distinct vertices u, v (0-based) of the
/// same block from that block's equality in gen_block(g, k).
SosCertificate derive_functional_bridge(const Graph& g, int u, int v);

/// Derives 1 - delta_u - delta_v >= 0 over encode_xor(s) for non-adjacent
/// vertices of different blocks, delta being the assignment indicator.
SosCertificate derive_block_bridge(const XorSystem& s, const XorGraph& xg, int u, int v);

/// Indicator that the variables of the block take vertex v's assignment.
Polynomial vertex_indicator(const XorGraph& xg, int v);

struct Transformed {
  ConstraintSystem system;
  SosCertificate certificate;
};

/// From a certificate over the encoded clique formula of g (a partitioned
/// graph) to one over gen_block(g, k).
Transformed clique_to_block(const Graph& g, int k, const ConstraintSystem& clique_system,
                            const SosCertificate& cert);

/// From a certificate over gen_block(xg.graph, k) to one over encode_xor(s).
Transformed block_to_xor(const XorSystem& s, const XorGraph& xg, const ConstraintSystem& block_system,
                         const SosCertificate& cert);

}  // namespace sosforge
