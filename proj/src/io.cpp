#include "sicforge/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace sicforge::io {

namespace {

const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object()) {
    throw InputError("<root>", "expected a JSON object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(key, "missing field");
  }
  return *it;
}

double read_real(const Json& j, const std::string& field) {
  if (!j.is_number()) {
    throw InputError(field, "expected a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw InputError(field, "non-finite number");
  }
  return x;
}

cd read_complex(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw InputError(field, "expected a [re, im] pair");
  }
  return {read_real(j[0], field), read_real(j[1], field)};
}

}  // namespace

Json complex_to_json(cd z) {
  return Json::array({z.real(), z.imag()});
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v(i)));
  }
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(complex_to_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json header(const std::string& kind, Dim d) {
  Json j = Json::object();
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  j["dim"] = d.value();
  return j;
}

Json state_to_json(const StateVector& psi, const std::string& kind) {
  Json j = header(kind, psi.dim());
  j["components"] = vector_to_json(psi.components());
  return j;
}

Json density_to_json(const ComplexMatrix& rho) {
  Json j = header("density_matrix", Dim(static_cast<int>(rho.rows())));
  j["matrix"] = matrix_to_json(rho);
  return j;
}

Json probabilities_to_json(Dim d, std::span<const double> p) {
  Json j = header("probabilities", d);
  j["p"] = Json(std::vector<double>(p.begin(), p.end()));
  return j;
}

Dim read_header(const Json& j) {
  const Json& version = require(j, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw InputError("format_version", "unsupported version (expected 1)");
  }
  const Json& dim = require(j, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 2 || dim.get<long long>() > 100000) {
    throw InputError("dim", "expected an integer >= 2");
  }
  return Dim(dim.get<int>());
}

StateVector state_from_json(const Json& j) {
  const Dim d = read_header(j);
  const Json& comps = require(j, "components");
  if (!comps.is_array() || comps.size() != d.size()) {
    throw InputError("components", "expected an array of dim = " + std::to_string(d.value()) + " entries");
  }
  ComplexVector v(d.value());
  for (int i = 0; i < d.value(); ++i) {
    v(i) = read_complex(comps[static_cast<std::size_t>(i)], "components[" + std::to_string(i) + "]");
  }
  if (std::abs(v.squaredNorm() - 1.0) > kUnitNormTol) {
    throw InputError("components", "vector is not unit norm");
  }
  return StateVector(std::move(v));
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Dim d = read_header(j);
  const Json& rows = require(j, "matrix");
  if (!rows.is_array() || rows.size() != d.size()) {
    throw InputError("matrix", "expected dim rows");
  }
  ComplexMatrix m(d.value(), d.value());
  for (int r = 0; r < d.value(); ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    const std::string field = "matrix[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != d.size()) {
      throw InputError(field, "expected dim entries");
    }
    for (int c = 0; c < d.value(); ++c) {
      m(r, c) = read_complex(row[static_cast<std::size_t>(c)], field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

std::vector<double> probabilities_from_json(const Json& j) {
  const Dim d = read_header(j);
  const Json& p = require(j, "p");
  if (!p.is_array() || p.size() != d.squared()) {
    throw InputError("p", "expected dim^2 = " + std::to_string(d.squared()) + " entries");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.push_back(read_real(p[i], "p[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string dump(const Json& j) {
  return j.dump(2) + "\n";
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("<root>", std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(path.string(), "cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_atomic(path, dump(j));
}

}  // namespace sicforge::io
