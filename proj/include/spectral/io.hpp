#ifndef SPECTRAL_IO_HPP
#define SPECTRAL_IO_HPP

#include <string>

#include <json.hpp>

#include "spectral/curve.hpp"
#include "spectral/dressing.hpp"

namespace spectral::io {

using json = nlohmann::json;

/// Complex numbers are [re, im]; points are [re, im], a bare real, or "inf".
json to_json(Complex z);
json to_json(const PointOnP1& p);
json to_json(const FactoredRational& f);
json to_json(const SpectralData& data);
json to_json(const KernelSpec& spec);

/// All parsers throw InvalidData with the offending JSON path.
SpectralData spectral_data_from_json(const json& j);
KernelSpec kernel_spec_from_json(const json& j);

/// Reads and parses a file; throws InvalidData on I/O or syntax errors.
json read_json_file(const std::string& path);

}  // namespace spectral::io

#endif  // SPECTRAL_IO_HPP
