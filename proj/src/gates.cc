// Copyright 2026 The flyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flyq/gates.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flyq/errors.h"
#include "overloaded.h"

namespace flyq {

namespace {

using internal::overloaded;

void require_finite(double value, const char *what) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

void require_pair(RailPair rails, std::size_t n_rails, const char *what) {
    if (rails.first == rails.second) {
        throw std::invalid_argument(std::string(what) + " rails must be distinct");
    }
    if (rails.first >= n_rails || rails.second >= n_rails) {
        throw std::invalid_argument(std::string(what) + " rail out of range");
    }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Jordan-Wigner creation operator a+_rail = Z x ... x Z x sigma+ x 1 x ... x 1,
// with a Z string on every lower rail. The Kronecker factors run from rail n-1
// down to rail 0 so that the row index equals the occupation mask.
Eigen::MatrixXcd dense_creation(std::size_t rail, std::size_t n_rails) {
    Eigen::Matrix2cd identity = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    Eigen::Matrix2cd raise;
    raise << 0, 0, 1, 0;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t k = n_rails; k-- > 0;) {
        const Eigen::Matrix2cd &factor = k < rail ? z : (k == rail ? raise : identity);
        out = kron(out, factor);
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd build_dense_mode_unitary(RailPair rails, const ModeMatrix &u, std::size_t n_rails) {
    if (n_rails > kMaxDenseRails) {
        throw CapacityError(
            "dense oracle limited to " + std::to_string(kMaxDenseRails) + " rails, got " + std::to_string(n_rails));
    }
    require_pair(rails, n_rails, "mode unitary");
    const Eigen::Index dim = Eigen::Index{1} << n_rails;
    std::vector<Eigen::MatrixXcd> creators;
    for (std::size_t j = 0; j < n_rails; ++j) {
        creators.push_back(dense_creation(j, n_rails));
    }
    // Transformed creation operators U a+_j U^dagger for the pair.
    const Eigen::MatrixXcd moved_first = u(0, 0) * creators[rails.first] + u(1, 0) * creators[rails.second];
    const Eigen::MatrixXcd moved_second = u(0, 1) * creators[rails.first] + u(1, 1) * creators[rails.second];

    Eigen::MatrixXcd out(dim, dim);
    Eigen::VectorXcd vacuum = Eigen::VectorXcd::Zero(dim);
    vacuum(0) = 1.0;
    for (Eigen::Index mask = 0; mask < dim; ++mask) {
        Eigen::VectorXcd column = vacuum;
        // |mask> = a+_{lowest} ... a+_{highest} |vac>, so the highest rail acts first.
        for (std::size_t j = n_rails; j-- > 0;) {
            if (!((mask >> j) & 1)) {
                continue;
            }
            if (j == rails.first) {
                column = moved_first * column;
            } else if (j == rails.second) {
                column = moved_second * column;
            } else {
                column = creators[j] * column;
            }
        }
        out.col(mask) = column;
    }
    return out;
}

namespace {

// Diagonal unitary exp(i * generator) for a diagonal generator built from number operators.
Eigen::MatrixXcd exp_i_diagonal(const Eigen::MatrixXcd &generator) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(generator.rows(), generator.cols());
    for (Eigen::Index i = 0; i < generator.rows(); ++i) {
        out(i, i) = std::exp(std::complex<double>(0, 1) * generator(i, i));
    }
    return out;
}

Eigen::MatrixXcd dense_number(std::size_t rail, std::size_t n_rails) {
    const Eigen::MatrixXcd a = dense_creation(rail, n_rails);
    return a * a.adjoint();
}

}  // namespace

Eigen::Matrix2cd phase_shifter_matrix(double phi, PhasePolicy policy) {
    require_finite(phi, "phase shift");
    if (policy == PhasePolicy::strict_hardware && !(phi > 0 && phi < std::numbers::pi)) {
        throw std::invalid_argument("phase shift outside the hardware range (0, pi)");
    }
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
    out(1, 1) = std::polar(1.0, phi);
    return out;
}

ModeMatrix coupler_matrix(double coupling_length_um, double transfer_length_um) {
    require_finite(coupling_length_um, "coupling length");
    require_finite(transfer_length_um, "transfer length");
    if (transfer_length_um <= 0) {
        throw std::invalid_argument("transfer length must be positive");
    }
    if (coupling_length_um < 0) {
        throw std::invalid_argument("coupling length must be non-negative");
    }
    const double theta = std::numbers::pi / 2 * (coupling_length_um / transfer_length_um);
    const std::complex<double> c = std::cos(theta);
    const std::complex<double> s(0, std::sin(theta));
    ModeMatrix out;
    out << c, s, s, c;
    return out;
}

Eigen::Vector4cd coulomb_phase(double chi_t) {
    require_finite(chi_t, "chi*t");
    return Eigen::Vector4cd(1, 1, 1, std::polar(1.0, -2 * chi_t));
}

std::vector<std::size_t> element_rails(const GateElement &element) {
    return std::visit(
        overloaded{
            [](const PhaseShifter &g) { return std::vector<std::size_t>{g.rail}; },
            [](const WaveguideCoupler &g) { return std::vector<std::size_t>{g.rails.first, g.rails.second}; },
            [](const CoulombCoupler &g) { return std::vector<std::size_t>{g.rails.first, g.rails.second}; },
        },
        element.gate);
}

double physical_length(const GateElement &element) {
    if (element.length_um) {
        return *element.length_um;
    }
    if (const auto *coupler = std::get_if<WaveguideCoupler>(&element.gate)) {
        return coupler->coupling_length_um;
    }
    return 0.0;
}

void validate_element(const GateElement &element, std::size_t n_rails, PhasePolicy policy) {
    if (element.length_um && !(std::isfinite(*element.length_um) && *element.length_um >= 0)) {
        throw std::invalid_argument("element length must be finite and non-negative");
    }
    std::visit(
        overloaded{
            [&](const PhaseShifter &g) {
                if (g.rail >= n_rails) {
                    throw std::invalid_argument("phase shifter rail out of range");
                }
                phase_shifter_matrix(g.phi, policy);
            },
            [&](const WaveguideCoupler &g) {
                require_pair(g.rails, n_rails, "coupler");
                coupler_matrix(g.coupling_length_um, g.transfer_length_um);
            },
            [&](const CoulombCoupler &g) {
                require_pair(g.rails, n_rails, "coulomb coupler");
                coulomb_phase(g.chi_t);
            },
        },
        element.gate);
}

OccupationState apply_element(OccupationState state, const GateElement &element) {
    return std::visit(
        overloaded{
            [&](const PhaseShifter &g) {
                require_finite(g.phi, "phase shift");
                return apply_rail_phase(std::move(state), g.rail, g.phi);
            },
            [&](const WaveguideCoupler &g) {
                return apply_mode_unitary(
                    std::move(state), g.rails, coupler_matrix(g.coupling_length_um, g.transfer_length_um));
            },
            [&](const CoulombCoupler &g) {
                require_pair(g.rails, state.n_rails(), "coulomb coupler");
                const std::uint32_t both = (std::uint32_t{1} << g.rails.first) | (std::uint32_t{1} << g.rails.second);
                const double phase = -2 * g.chi_t;
                return apply_diagonal_phase(
                    std::move(state), [&](BasisIndex m) { return (m.mask & both) == both ? phase : 0.0; });
            },
        },
        element.gate);
}

Eigen::MatrixXcd build_dense_unitary(const GateElement &element, std::size_t n_rails) {
    if (n_rails > kMaxDenseRails) {
        throw CapacityError(
            "dense oracle limited to " + std::to_string(kMaxDenseRails) + " rails, got " + std::to_string(n_rails));
    }
    if (n_rails == 0) {
        throw std::invalid_argument("dense oracle needs at least one rail");
    }
    validate_element(element, n_rails);
    return std::visit(
        overloaded{
            [&](const PhaseShifter &g) -> Eigen::MatrixXcd {
                return exp_i_diagonal(g.phi * dense_number(g.rail, n_rails));
            },
            [&](const WaveguideCoupler &g) -> Eigen::MatrixXcd {
                return build_dense_mode_unitary(g.rails, coupler_matrix(g.coupling_length_um, g.transfer_length_um), n_rails);
            },
            [&](const CoulombCoupler &g) -> Eigen::MatrixXcd {
                const Eigen::MatrixXcd interaction =
                    dense_number(g.rails.first, n_rails) * dense_number(g.rails.second, n_rails);
                return exp_i_diagonal(-2 * g.chi_t * interaction);
            },
        },
        element.gate);
}

}  // namespace flyq
