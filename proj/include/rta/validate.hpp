#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace rta {

struct ValidationResult {
    int passed = 0;
    int failed = 0;
    std::vector<std::string> lines;

    bool ok() const { return failed == 0; }
};

// Seeded invariant suite over randomized inputs: Gibbs-state structure,
// canonical anticommutation, jump-set/compact-form equivalence, trace and
// Hermiticity preservation, superoperator consistency, exact-quench vs RK4
// agreement, scaling-law fits and the perturbation closed form.
ValidationResult run_validation(std::uint64_t seed);

// Random Hermitian matrix and random density matrix, shared with the tests.
class RandomMatrices {
  public:
    explicit RandomMatrices(std::uint64_t seed) : state_(seed ? seed : 1) {}

    double uniform();  // in [0, 1)
    Eigen::MatrixXcd hermitian(int dim);
    Eigen::MatrixXcd density(int dim);

  private:
    std::uint64_t state_;
};

}  // namespace rta
