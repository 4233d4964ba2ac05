#ifndef GDL_SYNTH_HPP
#define GDL_SYNTH_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "gdl/dataset.hpp"

namespace gdl {

// Deterministic double streams on top of std::mt19937, whose output sequence
// is fixed by the standard. std::uniform_real_distribution and
// std::normal_distribution are implementation-defined, so the mappings are
// spelled out here: 53-bit uniforms and Box-Muller normals.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed)
      : engine_(static_cast<std::uint32_t>(seed ^ (seed >> 32))) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  // Two independent standard normals from one Box-Muller evaluation.
  std::pair<double, double> normal_pair();

 private:
  std::mt19937 engine_;
};

struct GaussianBlob {
  std::size_t count;
  double cx, cy;
  double sigma_x, sigma_y;
};

struct NoisySegment {
  std::size_t count;
  double x0, y0, x1, y1;
  double sigma;  // perpendicular jitter
};

struct UniformBox {
  std::size_t count;
  double x_min, x_max, y_min, y_max;
};

using SynthComponent = std::variant<GaussianBlob, NoisySegment, UniformBox>;

// 2-D mixture. Points are emitted component by component in listed order and
// labeled by component index. noise_sigma >= 0 adds one extra N(0, sigma^2)
// draw per coordinate after generation; sigma 0 reproduces the base points
// bit-for-bit. Identical specs give bit-identical datasets.
struct SynthSpec {
  std::vector<SynthComponent> components;
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;
};

Dataset generate(const SynthSpec& spec);

// Frozen presets used by the test suites and the CLI --synth option.

// Three-shape scale mix: one small dense blob, one large sparse blob, one
// elongated low-density band. 600 points, labels {0, 1, 2}.
SynthSpec multiscale_spec(std::uint64_t seed);

// Same mix rescaled to `total` points (>= 12), keeping the component
// proportions. Used by timing benchmarks that vary n.
SynthSpec multiscale_spec(std::uint64_t seed, std::size_t total);

// Two blobs of different density, 200 points, labels {0, 1}.
SynthSpec two_blob_spec(std::uint64_t seed, double noise_sigma);

// Two tight 80-point blobs plus 120 box-uniform outliers (label 2).
SynthSpec blobs_with_outliers_spec(std::uint64_t seed);

}  // namespace gdl

#endif  // GDL_SYNTH_HPP
