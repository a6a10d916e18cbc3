#pragma once

// Linear open quantum systems as (S, L, H) triples and the network algebra
// acting on them.
//
// A LinearSLH with N modes and M channels stores
//   S : M x M unitary scattering matrix,
//   L : M x 2N complex matrix, row k holding L_k^T of L_k = L_k^T x,
//   G : 2N x 2N real symmetric matrix of H = x^T G x / 2.
//
// Operator-ordering constants are dropped everywhere: only the first and
// second moments are represented.

#include <optional>
#include <vector>

#include "gaussnet/gaussian_core.hpp"

namespace gaussnet {

/// Per-channel variance of the input noise. Empty means all vacuum (1).
using ChannelWeights = RealVector;

class LinearSLH {
 public:
  LinearSLH(ComplexMatrix scattering, ComplexMatrix coupling,
            RealMatrix hamiltonian);

  /// (I, 0, 0) on `n_channels` channels and `n_modes` modes.
  static LinearSLH identity(int n_channels, int n_modes);

  const ComplexMatrix& scattering() const { return s_; }
  const ComplexMatrix& coupling() const { return l_; }
  const RealMatrix& hamiltonian() const { return g_; }
  int n_channels() const { return static_cast<int>(s_.rows()); }
  int n_modes() const { return static_cast<int>(g_.rows() / 2); }

 private:
  ComplexMatrix s_;
  ComplexMatrix l_;
  RealMatrix g_;
};

/// Dense drift and diffusion of dV/dt = A V + V A^T + D.
struct DriftDiffusion {
  RealMatrix a;
  RealMatrix d;

  int dim() const { return static_cast<int>(a.rows()); }
};

/// Placement of a system's modes inside a larger mode space.
struct ModeEmbedding {
  int total_modes = 0;
  int first_mode = 0;
};

/// Pads `sys` to `target_channels` channels. Source channel k is placed at
/// slot `assignment[k]`; other slots get zero coupling and identity
/// scattering. With `modes`, the mode space is zero-padded so the system
/// acts on modes [first_mode, first_mode + n_modes) of a larger space.
LinearSLH pad(const LinearSLH& sys, int target_channels,
              const std::vector<int>& assignment,
              std::optional<ModeEmbedding> modes = std::nullopt);

/// Cascade product g2 <| g1: outputs of g1 feed the inputs of g2.
///
/// S = S2 S1, L = L2 + S2 L1, G = G1 + G2 + M + M^T with
/// M = Im(L2^dagger S2 W L1). W holds the input-noise weights of each
/// channel and defaults to the identity.
LinearSLH series(const LinearSLH& g2, const LinearSLH& g1,
                 const ChannelWeights& weights = {});

/// Closes a direct measurement feedback loop: homodyne output of `channel`
/// scaled by `gain` drives the Hamiltonian term f^T x.
LinearSLH feedback_close(const LinearSLH& sys, const RealVector& f,
                         double gain, int channel,
                         const ChannelWeights& weights = {});

/// (S, L, H) -> (I, S^dagger L, H). Only valid for unconditional moments:
/// the discarded scattering acts on outputs nobody reads.
LinearSLH strip_scattering(const LinearSLH& sys);

/// A = Sigma_N [G + Im(L^dagger W L)], D = Sigma_N Re(L^dagger W L) Sigma_N^T.
DriftDiffusion drift_diffusion(const LinearSLH& sys,
                               const ChannelWeights& weights = {});

/// Drops coordinate `index` from (A, D). Throws InternalConsistencyError if
/// it is coupled to the others by more than `tol`.
DriftDiffusion drop_decoupled_coordinate(const DriftDiffusion& dd, int index,
                                         double tol = 1e-12);

/// max |S^dagger S - I|.
double unitarity_defect(const ComplexMatrix& s);

}  // namespace gaussnet
