#include "rta/fermion.hpp"

#include <bit>
#include <cmath>

namespace rta {

namespace {

void check_length(int length) {
    if (length < 1 || length > kMaxChainLength) {
        throw std::invalid_argument("chain length must be in [1, " +
                                    std::to_string(kMaxChainLength) + "], got " +
                                    std::to_string(length));
    }
}

void check_site(int length, int site, const char* what) {
    check_length(length);
    if (site < 1 || site > length) {
        throw std::invalid_argument(std::string(what) + " index must be in [1, " +
                                    std::to_string(length) + "], got " +
                                    std::to_string(site));
    }
}

// (-1)^(number of occupied sites below `site`)
double jw_sign(unsigned state, int site) {
    const unsigned below = state & ((1u << (site - 1)) - 1u);
    return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

Operator fermion_annihilation(int length, int site) {
    check_site(length, site, "site");
    const unsigned dim = 1u << length;
    const unsigned bit = 1u << (site - 1);
    Operator c = Operator::Zero(dim, dim);
    for (unsigned s = 0; s < dim; ++s) {
        if (s & bit) {
            c(s ^ bit, s) = jw_sign(s, site);
        }
    }
    return c;
}

Operator fermion_site_number(int length, int site) {
    check_site(length, site, "site");
    const unsigned dim = 1u << length;
    const unsigned bit = 1u << (site - 1);
    Operator n = Operator::Zero(dim, dim);
    for (unsigned s = 0; s < dim; ++s) {
        if (s & bit) n(s, s) = 1.0;
    }
    return n;
}

Operator build_fermion_chain(int length, double t_hop) {
    check_length(length);
    const unsigned dim = 1u << length;
    Operator h = Operator::Zero(dim, dim);
    // c^dag_{l+1} c_l moves a particle from site l to l+1; the JW strings of
    // adjacent sites cancel except for the sign of site l itself, which is
    // empty in the target state, so the amplitude is +1 for each hop.
    for (int l = 1; l < length; ++l) {
        const unsigned from = 1u << (l - 1);
        const unsigned to = 1u << l;
        for (unsigned s = 0; s < dim; ++s) {
            if ((s & from) && !(s & to)) {
                const unsigned t = (s ^ from) | to;
                h(t, s) += -t_hop;
                h(s, t) += -t_hop;
            }
        }
    }
    return h;
}

RealVector single_particle_energies(int length, double t_hop) {
    if (length < 1) {
        throw std::invalid_argument("single_particle_energies: length must be >= 1");
    }
    RealVector eps(length);
    for (int k = 1; k <= length; ++k) {
        // the midband mode (2k = L+1) is exactly at zero energy; writing it as
        // such keeps the beta = +inf occupation on the step (1/2, not 0 or 1)
        eps(k - 1) = (2 * k == length + 1)
                         ? 0.0
                         : -2.0 * t_hop * std::cos(M_PI * k / (length + 1));
    }
    return eps;
}

Operator fermion_mode_annihilation(int length, int mode) {
    check_site(length, mode, "mode");
    const unsigned dim = 1u << length;
    const double norm = std::sqrt(2.0 / (length + 1));
    Operator ck = Operator::Zero(dim, dim);
    for (int n = 1; n <= length; ++n) {
        ck += norm * std::sin(M_PI * mode * n / (length + 1)) *
              fermion_annihilation(length, n);
    }
    return ck;
}

Operator fermion_mode_number(int length, int mode) {
    const Operator ck = fermion_mode_annihilation(length, mode);
    return ck.adjoint() * ck;
}

}  // namespace rta
