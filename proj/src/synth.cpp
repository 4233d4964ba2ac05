#include "gdl/synth.hpp"

#include <cmath>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::size_t component_count(const SynthComponent& c) {
  return std::visit([](const auto& v) { return v.count; }, c);
}

}  // namespace

double PortableRng::uniform01() {
  // 53-bit mantissa from two 32-bit draws: (hi27 * 2^26 + lo26) / 2^53
  const std::uint64_t hi = engine_() >> 5;
  const std::uint64_t lo = engine_() >> 6;
  return (static_cast<double>(hi) * 67108864.0 + static_cast<double>(lo)) *
         (1.0 / 9007199254740992.0);
}

std::pair<double, double> PortableRng::normal_pair() {
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = kTwoPi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

Dataset generate(const SynthSpec& spec) {
  if (spec.components.empty()) {
    throw InvalidConfigError("synth: spec has no components");
  }
  if (!(spec.noise_sigma >= 0.0)) {
    throw InvalidConfigError("synth: noise_sigma must be >= 0");
  }
  std::size_t total = 0;
  for (const auto& c : spec.components) {
    const std::size_t count = component_count(c);
    if (count == 0) {
      throw InvalidConfigError("synth: component with zero points");
    }
    total += count;
  }
  if (total < 2) {
    throw InvalidConfigError("synth: need at least 2 points overall");
  }

  PortableRng rng(spec.seed);
  std::vector<double> points;
  points.reserve(2 * total);
  std::vector<int> labels;
  labels.reserve(total);

  int label = 0;
  for (const auto& component : spec.components) {
    if (const auto* blob = std::get_if<GaussianBlob>(&component)) {
      if (!(blob->sigma_x >= 0.0) || !(blob->sigma_y >= 0.0)) {
        throw InvalidConfigError("synth: blob spread must be >= 0");
      }
      for (std::size_t i = 0; i < blob->count; ++i) {
        const auto [z0, z1] = rng.normal_pair();
        points.push_back(blob->cx + blob->sigma_x * z0);
        points.push_back(blob->cy + blob->sigma_y * z1);
        labels.push_back(label);
      }
    } else if (const auto* seg = std::get_if<NoisySegment>(&component)) {
      if (!(seg->sigma >= 0.0)) {
        throw InvalidConfigError("synth: segment jitter must be >= 0");
      }
      const double dx = seg->x1 - seg->x0;
      const double dy = seg->y1 - seg->y0;
      const double len = std::sqrt(dx * dx + dy * dy);
      if (!(len > 0.0)) {
        throw InvalidConfigError("synth: segment endpoints coincide");
      }
      const double px = -dy / len;  // unit perpendicular
      const double py = dx / len;
      for (std::size_t i = 0; i < seg->count; ++i) {
        const double t = rng.uniform01();
        const auto [z0, z1] = rng.normal_pair();
        (void)z1;
        points.push_back(seg->x0 + t * dx + seg->sigma * z0 * px);
        points.push_back(seg->y0 + t * dy + seg->sigma * z0 * py);
        labels.push_back(label);
      }
    } else {
      const auto& box = std::get<UniformBox>(component);
      if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min)) {
        throw InvalidConfigError("synth: box must have positive extent");
      }
      for (std::size_t i = 0; i < box.count; ++i) {
        const double ux = rng.uniform01();
        const double uy = rng.uniform01();
        points.push_back(box.x_min + ux * (box.x_max - box.x_min));
        points.push_back(box.y_min + uy * (box.y_max - box.y_min));
        labels.push_back(label);
      }
    }
    ++label;
  }

  // perturbation happens after all base draws, so two specs differing only in
  // noise_sigma share identical base points under one seed
  if (spec.noise_sigma > 0.0) {
    for (std::size_t i = 0; i < points.size(); i += 2) {
      const auto [z0, z1] = rng.normal_pair();
      points[i] += spec.noise_sigma * z0;
      points[i + 1] += spec.noise_sigma * z1;
    }
  }

  return Dataset::from_points(std::move(points), 2, Metric::kEuclidean,
                              std::move(labels));
}

SynthSpec multiscale_spec(std::uint64_t seed) {
  return multiscale_spec(seed, 600);
}

SynthSpec multiscale_spec(std::uint64_t seed, std::size_t total) {
  if (total < 12) {
    throw InvalidConfigError("multiscale_spec: need at least 12 points");
  }
  // 600-point reference mix is 150 / 250 / 200; keep those proportions.
  const std::size_t dense = (total * 150 + 300) / 600;
  const std::size_t sparse = (total * 250 + 300) / 600;
  const std::size_t band = total - dense - sparse;
  SynthSpec spec;
  spec.seed = seed;
  spec.components = {
      GaussianBlob{dense, 0.0, 0.0, 0.11, 0.11},
      GaussianBlob{sparse, 3.1, 0.2, 0.50, 0.50},
      NoisySegment{band, -2.0, 2.0, 2.8, 2.4, 0.12},
  };
  return spec;
}

SynthSpec two_blob_spec(std::uint64_t seed, double noise_sigma) {
  SynthSpec spec;
  spec.seed = seed;
  spec.noise_sigma = noise_sigma;
  spec.components = {
      GaussianBlob{120, 0.0, 0.0, 0.10, 0.10},
      GaussianBlob{80, 1.5, 0.0, 0.14, 0.75},
  };
  return spec;
}

SynthSpec blobs_with_outliers_spec(std::uint64_t seed) {
  SynthSpec spec;
  spec.seed = seed;
  spec.components = {
      GaussianBlob{80, -1.6, 0.0, 0.14, 0.14},
      GaussianBlob{80, 1.6, 0.0, 0.14, 0.14},
      UniformBox{120, -4.0, 4.0, -3.0, 3.0},
  };
  return spec;
}

}  // namespace gdl
