#pragma once

#include "sivnuc/config.hpp"
#include "sivnuc/types.hpp"

namespace sivnuc {

/// The five ground-state terms, each in MHz, kept separately so they can be
/// inspected one at a time.
struct HamiltonianTerms {
  Mat8 electron_zeeman;  // gamma_e (B . S) + gamma_L q Lz Bz
  Mat8 nuclear_zeeman;   // -gamma_n (B . I)
  Mat8 hyperfine;        // A_par Sz Iz + A_perp (Sx Ix + Sy Iy)
  Mat8 spin_orbit;       // -lambda_SO Lz Sz
  Mat8 strain;           // T ([[alpha, beta], [beta, -alpha]] x 1_4) T^-1

  Mat8 sum() const;
};

struct Hamiltonian {
  Mat8 matrix;
  HamiltonianTerms terms;
  SystemConfig config;
};

HamiltonianTerms build_terms(const SystemConfig& config);

/// Validates `config` and assembles the full 8x8 Hamiltonian in MHz.
Hamiltonian build_hamiltonian(const SystemConfig& config);

/// Spectral (largest singular value) norm.
double spectral_norm(const Mat8& m);

}  // namespace sivnuc
