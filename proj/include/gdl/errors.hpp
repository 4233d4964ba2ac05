#ifndef GDL_ERRORS_HPP
#define GDL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gdl {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid dataset, graph or run parameters (K/K0/Kc/a/nT out of range,
// malformed matrices, bad generator specs).
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

// Every K-NN distance in the dataset is zero; the kernel bandwidth is undefined.
class AllDistancesZeroError : public Error {
 public:
  using Error::Error;
};

// An affinity operation received an empty vertex set.
class EmptyClusterError : public Error {
 public:
  using Error::Error;
};

// An affinity operation received vertex sets that share a vertex.
class OverlappingClustersError : public Error {
 public:
  using Error::Error;
};

// The requested cluster count exceeds the number of seed clusters.
class TargetExceedsSeedsError : public Error {
 public:
  using Error::Error;
};

// Outlier elimination needs at least two clusters to split.
class TooFewClustersError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (dataset files, CLI-provided lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gdl

#endif  // GDL_ERRORS_HPP
