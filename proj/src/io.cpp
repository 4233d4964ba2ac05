#include "gdl/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_double(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
  return value;
}

int parse_int(const std::string& field, std::size_t line_no) {
  int value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line_no) + ": bad label '" + field + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Dataset read_dataset(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("'" + path.string() + "' is empty");
  }
  line = strip_cr(line);
  const bool points_payload = (line == "points");
  if (!points_payload && line != "distances") {
    throw ParseError("line 1: header must be 'points' or 'distances', got '" + line + "'");
  }
  if (!points_payload && options.labeled) {
    throw ParseError("distance matrices cannot carry a label column");
  }

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t fields_per_row = 0;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line, options.delimiter);
    if (fields_per_row == 0) {
      fields_per_row = fields.size();
      if (options.labeled && fields_per_row < 2) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": labeled rows need at least two fields");
      }
    } else if (fields.size() != fields_per_row) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(fields_per_row) + " fields, got " +
                       std::to_string(fields.size()));
    }
    const std::size_t numeric = options.labeled ? fields.size() - 1 : fields.size();
    for (std::size_t f = 0; f < numeric; ++f) {
      values.push_back(parse_double(fields[f], line_no));
    }
    if (options.labeled) {
      labels.push_back(parse_int(fields.back(), line_no));
    }
    ++rows;
  }
  if (rows == 0) {
    throw ParseError("'" + path.string() + "' has no data rows");
  }

  if (points_payload) {
    const std::size_t dim = options.labeled ? fields_per_row - 1 : fields_per_row;
    return Dataset::from_points(std::move(values), dim, options.metric,
                                std::move(labels));
  }
  if (fields_per_row != rows) {
    throw ParseError("distance matrix is " + std::to_string(rows) + " x " +
                     std::to_string(fields_per_row) + ", expected square");
  }
  return Dataset::from_distances(std::move(values), rows);
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path,
                   char delimiter) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  const bool points_payload = (dataset.metric() != Metric::kPrecomputed);
  out << (points_payload ? "points" : "distances") << '\n';
  if (points_payload) {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      const auto p = dataset.point(i);
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k > 0) {
          out << delimiter;
        }
        out << format_double(p[k]);
      }
      if (dataset.has_labels()) {
        out << delimiter << dataset.labels()[i];
      }
      out << '\n';
    }
  } else {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      for (std::size_t j = 0; j < dataset.size(); ++j) {
        if (j > 0) {
          out << delimiter;
        }
        out << format_double(dataset.stored_distance(i, j));
      }
      out << '\n';
    }
  }
  if (!out) {
    throw Error("write failed for '" + path.string() + "'");
  }
}

}  // namespace gdl
