#pragma once

#include <map>

#include "superkoszul/phase_space.hpp"

namespace superkoszul {

enum class SchoutenConvention { original, redefined };

/// Even canonical Poisson bracket (H,G) on a T*-type phase space.
/// Inhomogeneous-parity H is split into parity parts and recombined.
SuperSeries canonical_poisson(const SuperSeries& H, const SuperSeries& G, const PhaseSpace& ps);

/// Odd canonical Schouten bracket on a PiT*-type phase space.
/// convention=original gives [[P,R]]; redefined multiplies by
/// (-1)^{P+1} per homogeneous part of P.
SuperSeries canonical_schouten(const SuperSeries& P, const SuperSeries& R, const PhaseSpace& ps,
                               SchoutenConvention convention = SchoutenConvention::original);

/// Coordinate vector field X = X^a d/dx^a with homogeneous parity.
struct VectorFieldRepr {
    ContextPtr ctx;
    std::map<int, SuperSeries> components;  // variable index -> X^a
    int parity = 0;

    void validate() const;
    SuperSeries apply(const SuperSeries& f) const;
};

/// Super commutator [X,Y] = X(Y^a) d_a - (-1)^{XY} Y(X^a) d_a.
VectorFieldRepr commutator(const VectorFieldRepr& X, const VectorFieldRepr& Y);

/// Linear-in-momentum Hamiltonian of a vector field: X^a p_a on an even
/// phase space, (-1)^{X} X^a x*_a on an odd one.
SuperSeries lift_vector_field(const VectorFieldRepr& X, const PhaseSpace& ps);

/// Invariant master Hamiltonian of an iterated phase space:
/// (-1)^{a} pi_a p_a on T*(PiT*M) (even bracket over antimomentum fiber
/// coordinates) or ps^a x*_a on PiT*(T*M) (odd bracket over momentum
/// fiber coordinates).
SuperSeries canonical_master_hamiltonian(const PhaseSpace& ps_double,
                                         const TruncationPolicy& trunc);

}  // namespace superkoszul
