#pragma once

namespace qscatter::scatter {

/// Diffusive slab parameters. Lengths in micrometers.
struct MediumSpec {
  double ell = 0.9;   // transport mean free path
  double L = 6.0;     // sample thickness
  double z_e = 0.0;   // extrapolation length (interface correction)
  int n_channels = 32; // modes per side

  /// Throws on invalid parameters (ell <= 0, L < ell, z_e < 0, N < 1).
  void validate() const;

  /// True when the slab is comfortably diffusive (L >= 3 ell).
  bool deep_diffusive() const { return L >= 3.0 * ell; }

  /// Wavelength-aware regime check lambda/(2 pi) < ell << L.
  bool paper_regime(double lambda_um) const;
};

/// Ensemble-mean total transmission (ell + z_e)/(L + 2 z_e), clamped
/// into the open interval (0, 1).
double mean_transmission(const MediumSpec &medium);

/// Average number of scattering events ((L + 2 z_e)/ell)^2.
double scattering_event_count(const MediumSpec &medium);

} // namespace qscatter::scatter
