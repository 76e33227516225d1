#pragma once

// Reading square complex matrices from JSON or CSV text.
//
// JSON: {"n": 2, "re": [[1, 1], [0, 2]], "im": [[0, 0], [0, 0]]}; "im" may be omitted.
// CSV:  either one matrix row per line as re,im,re,im,... (2n fields), or
//       one entry per line as re,im in row-major order (n*n lines).
//       Blank lines and lines starting with '#' are ignored.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbh/matrix.hpp"

namespace pbh::io {

inline CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re")) throw Error("matrix JSON: expected object with \"n\" and \"re\"");
  const auto n = j.at("n").get<long>();
  if (n <= 0) throw Error("matrix JSON: \"n\" must be positive");
  const auto dim = static_cast<std::size_t>(n);
  auto read_block = [&](const char* key, CMatrix& m, bool imag) {
    const auto& rows = j.at(key);
    if (!rows.is_array() || rows.size() != dim) throw Error(std::string("matrix JSON: \"") + key + "\" must have n rows");
    for (std::size_t i = 0; i < dim; ++i) {
      const auto& row = rows[i];
      if (!row.is_array() || row.size() != dim) throw Error(std::string("matrix JSON: row of \"") + key + "\" must have n entries");
      for (std::size_t c = 0; c < dim; ++c) {
        if (!row[c].is_number()) throw Error("matrix JSON: non-numeric entry");
        const double v = row[c].get<double>();
        if (imag)
          m(i, c).imag(v);
        else
          m(i, c).real(v);
      }
    }
  };
  CMatrix m(dim, dim);
  read_block("re", m, false);
  if (j.contains("im")) read_block("im", m, true);
  return m;
}

inline CMatrix matrix_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("matrix JSON: parse error: ") + e.what());
  }
  return matrix_from_json(j);
}

inline nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array(), c = nlohmann::json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline CMatrix matrix_from_csv_text(const std::string& text) {
  std::vector<std::vector<double>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> fields;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error("matrix CSV: bad number '" + cell + "'");
      }
    }
    if (fields.size() % 2 != 0) throw Error("matrix CSV: each line needs re,im pairs");
    lines.push_back(std::move(fields));
  }
  if (lines.empty()) throw Error("matrix CSV: no data");
  const bool entry_per_line = lines.size() > 1 && std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.size() == 2; });
  std::size_t n = 0;
  if (entry_per_line) {
    n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(lines.size()))));
    if (n * n != lines.size()) throw Error("matrix CSV: entry count is not a perfect square");
  } else {
    n = lines.size();
    for (const auto& l : lines)
      if (l.size() != 2 * n) throw Error("matrix CSV: row-per-line layout needs 2n fields on each of n lines");
  }
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) {
      if (entry_per_line)
        m(i, c) = cplx(lines[i * n + c][0], lines[i * n + c][1]);
      else
        m(i, c) = cplx(lines[i][2 * c], lines[i][2 * c + 1]);
    }
  return m;
}

/// Dispatches on extension: .csv is CSV, anything else JSON.
inline CMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? matrix_from_csv_text(buf.str()) : matrix_from_json_text(buf.str());
}

}  // namespace pbh::io
