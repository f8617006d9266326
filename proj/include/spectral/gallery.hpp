#ifndef SPECTRAL_GALLERY_HPP
#define SPECTRAL_GALLERY_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spectral/curve.hpp"

namespace spectral {

using ReferenceMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct Identity {
  std::string name;
  std::function<double(const Eigen::VectorXd& u, const Eigen::VectorXd& x)> residual;
  /// Reported but not expected to vanish.
  bool informational = false;
};

struct GalleryEntry {
  std::string name;
  SpectralData data;
  ReferenceMap reference;  // may be empty
  std::vector<Identity> identities;
};

GalleryEntry euclidean(int n);
/// Two lines glued at +-a ~ +-b with a = b r / c and the given normalization point r.
GalleryEntry example1_with_radius(Complex b, Complex c, Complex r);
/// As above with r chosen so that the differential is regular and the Q residues agree.
GalleryEntry example1(Complex b, Complex c);
GalleryEntry example2();
GalleryEntry example3();
GalleryEntry polar(Complex alpha);
GalleryEntry cylindrical(Complex alpha);
GalleryEntry spherical_n(int n, Complex alpha);
inline GalleryEntry spherical3(Complex alpha) { return spherical_n(3, alpha); }

/// Names accepted by gallery_entry for the standard parameter choices.
std::vector<std::string> gallery_names();
/// "euclideanN", "sphericalN", "example1".."example3", "polar", "cylindrical", and the unlisted
/// "example1-decoy" (example 1 with radius 2/3, which breaks regularity).
GalleryEntry gallery_entry(std::string_view name);

double reference_residual(const GalleryEntry& entry, const Eigen::VectorXd& u);

/// Standard n-spherical chart with r = e^{u^1} and angles u^2..u^n.
Eigen::VectorXd spherical_reference(const Eigen::VectorXd& u);

}  // namespace spectral

#endif  // SPECTRAL_GALLERY_HPP
