#pragma once

#include "rta/types.hpp"

namespace rta {

// Dense Jordan-Wigner construction on the 2^L Fock space. Occupation-number
// basis with site 1 as the least significant bit: the basis index of a
// configuration {n_l} is sum_l n_l 2^(l-1). This ordering is fixed so that
// serialized operators are reproducible.
inline constexpr int kMaxChainLength = 10;

// Annihilation operator c_l (1-based site index) with the Jordan-Wigner
// string on sites < l.
Operator fermion_annihilation(int length, int site);

// Number operator n_l = c_l^dag c_l.
Operator fermion_site_number(int length, int site);

// H = -t sum_{l=1}^{L-1} (c^dag_{l+1} c_l + c^dag_l c_{l+1}) on 2^L x 2^L.
Operator build_fermion_chain(int length, double t_hop);

// Single-particle dispersion of the open chain: e_k = -2 t cos(pi k/(L+1)).
RealVector single_particle_energies(int length, double t_hop);

// Mode number operator n_k = c_k^dag c_k with
// c_k = sqrt(2/(L+1)) sum_n sin(pi k n/(L+1)) c_n. The sqrt(2/(L+1))
// prefactor makes the sine transform unitary, so {c_k, c_k'^dag} = delta.
Operator fermion_mode_number(int length, int mode);

// The mode annihilation operator c_k itself (used in tests).
Operator fermion_mode_annihilation(int length, int mode);

}  // namespace rta
