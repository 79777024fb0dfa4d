#include "qhmetric/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qhmetric/errors.hpp"

namespace qhm::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

namespace {

Complex entry_from_json(const json& e, std::size_t index) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError("entry " + std::to_string(index) + " is not a [re, im] pair");
}

}  // namespace

ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("matrix document needs an integer 'dim'");
  }
  const auto dim = doc["dim"].get<long long>();
  if (dim < 1) throw ParseError("'dim' must be positive");
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("matrix document needs an 'entries' array");
  }
  const json& entries = doc["entries"];
  if (entries.size() != static_cast<std::size_t>(dim * dim)) {
    std::ostringstream os;
    os << "expected " << dim * dim << " entries, found " << entries.size();
    throw ParseError(os.str());
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Complex z = entry_from_json(entries[k], k);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParseError("entry " + std::to_string(k) + " is not finite");
    }
    m(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim)) = z;
  }
  return m;
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return matrix_from_json(doc);
}

void write_matrix(const ComplexMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << matrix_to_json(m).dump(2) << '\n';
}

}  // namespace qhm::io
