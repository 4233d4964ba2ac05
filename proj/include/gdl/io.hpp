#ifndef GDL_IO_HPP
#define GDL_IO_HPP

#include <filesystem>
#include <string>

#include "gdl/dataset.hpp"

namespace gdl {

// Text dataset format: first line is a header naming the payload, either
// "points" or "distances"; every following line is one delimited row.
// Point rows carry dim feature fields plus, when labeled, a trailing integer
// label. Distance rows carry n fields and cannot be labeled. Whether a label
// column is present comes from ReadOptions, never from sniffing.
struct ReadOptions {
  char delimiter = ',';
  bool labeled = false;
  Metric metric = Metric::kEuclidean;  // ignored for "distances" payloads
};

Dataset read_dataset(const std::filesystem::path& path, const ReadOptions& options);

// Writes the header plus rows in the exact format read_dataset accepts.
// Doubles are rendered with %.17g so a round trip is value-exact.
void write_dataset(const Dataset& dataset, const std::filesystem::path& path,
                   char delimiter = ',');

// %.17g rendering shared by every writer, so identical runs emit identical bytes.
std::string format_double(double value);

}  // namespace gdl

#endif  // GDL_IO_HPP
