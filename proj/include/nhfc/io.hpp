#ifndef NHFC_IO_HPP
#define NHFC_IO_HPP

#include "nhfc/symbol.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nhfc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All numeric output carries 17 significant digits.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

inline std::string h_string(const ModelProblem& p) {
  std::ostringstream os;
  for (int j = 0; j < p.d; ++j) {
    if (j) os << ",";
    os << fmt17(p.h[static_cast<size_t>(j)]);
  }
  return os.str();
}

namespace detail_io {

inline std::map<std::string, std::string> parse_header(const std::string& line, int lineno) {
  std::map<std::string, std::string> kv;
  std::istringstream is(line);
  std::string tok;
  is >> tok;
  kv["_type"] = tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw IoError("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline ModelProblem problem_from_header(const std::map<std::string, std::string>& kv, int lineno) {
  const auto need = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end())
      throw IoError("line " + std::to_string(lineno) + ": missing header field '" + k + "'");
    return it->second;
  };
  const std::string kind = need("kind");
  std::vector<double> h;
  std::istringstream hs(need("h"));
  std::string part;
  while (std::getline(hs, part, ',')) h.push_back(std::stod(part));
  if (kind == "Oh1D") {
    if (h.size() != 1) throw IoError("line " + std::to_string(lineno) + ": Oh1D needs one h");
    return ModelProblem::oh1d(h[0]);
  }
  if (kind == "OhND") return ModelProblem::ohnd(h);
  throw IoError("line " + std::to_string(lineno) + ": unknown kind '" + kind + "'");
}

inline int int_field(const std::map<std::string, std::string>& kv, const char* k, int lineno) {
  auto it = kv.find(k);
  if (it == kv.end())
    throw IoError("line " + std::to_string(lineno) + ": missing header field '" + std::string(k) + "'");
  return std::stoi(it->second);
}

}  // namespace detail_io

inline void write_grid_function(const GridFunction& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "gridfunction kind=" << (f.p.kind == ProblemKind::Oh1D ? "Oh1D" : "OhND")
     << " d=" << f.p.d << " h=" << h_string(f.p) << " M=" << f.M << "\n";
  for (long g = 0; g < f.size(); ++g) {
    const auto c = grid_coords(g, f.M, f.p.d);
    for (int j = 0; j < f.p.d; ++j) os << c[static_cast<size_t>(j)] << " ";
    os << fmt17(f.values(g).real()) << " " << fmt17(f.values(g).imag()) << "\n";
  }
}

inline GridFunction read_grid_function(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError(path + ": empty file");
  const auto kv = detail_io::parse_header(line, 1);
  if (kv.at("_type") != "gridfunction") throw IoError(path + ": not a gridfunction file");
  const ModelProblem p = detail_io::problem_from_header(kv, 1);
  const int M = detail_io::int_field(kv, "M", 1);
  GridFunction f = make_grid_function(p, M);
  int lineno = 1;
  long seen = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::array<int, 3> c{0, 0, 0};
    double re, im;
    for (int j = 0; j < p.d; ++j)
      if (!(ls >> c[static_cast<size_t>(j)]))
        throw IoError(path + ": line " + std::to_string(lineno) + ": bad grid coordinates");
    if (!(ls >> re >> im))
      throw IoError(path + ": line " + std::to_string(lineno) + ": bad complex value");
    f.values(grid_pos(c, M, p.d)) = Complex(re, im);
    ++seen;
  }
  if (seen != f.size()) throw IoError(path + ": expected " + std::to_string(f.size()) + " rows");
  return f;
}

inline void write_coeffs(const SpectralCoeffs& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "spectralcoeffs kind=" << (c.p.kind == ProblemKind::Oh1D ? "Oh1D" : "OhND")
     << " d=" << c.p.d << " h=" << h_string(c.p) << " N=" << c.N
     << " flavor=" << flavor_name(c.flavor) << "\n";
  for (long w = 0; w < c.size(); ++w) {
    const EigenIndex xi = box_index(w, c.N, c.p.d);
    for (int j = 0; j < c.p.d; ++j) os << xi.k[static_cast<size_t>(j)] << " ";
    os << fmt17(c.values(w).real()) << " " << fmt17(c.values(w).imag()) << "\n";
  }
}

inline SpectralCoeffs read_coeffs(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError(path + ": empty file");
  const auto kv = detail_io::parse_header(line, 1);
  if (kv.at("_type") != "spectralcoeffs") throw IoError(path + ": not a spectralcoeffs file");
  const ModelProblem p = detail_io::problem_from_header(kv, 1);
  const int N = detail_io::int_field(kv, "N", 1);
  const Flavor fl = kv.count("flavor") && kv.at("flavor") == "Lstar" ? Flavor::Lstar : Flavor::L;
  SpectralCoeffs c = make_coeffs(p, N, fl);
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    EigenIndex xi;
    xi.d = p.d;
    double re, im;
    for (int j = 0; j < p.d; ++j)
      if (!(ls >> xi.k[static_cast<size_t>(j)]))
        throw IoError(path + ": line " + std::to_string(lineno) + ": bad index");
    if (!(ls >> re >> im))
      throw IoError(path + ": line " + std::to_string(lineno) + ": bad complex value");
    c.at(xi) = Complex(re, im);
  }
  return c;
}

inline void write_symbol(const SymbolTable& a, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "symboltable kind=" << (a.p.kind == ProblemKind::Oh1D ? "Oh1D" : "OhND")
     << " d=" << a.p.d << " h=" << h_string(a.p) << " M=" << a.M << " N=" << a.N
     << " flavor=" << flavor_name(a.flavor) << " xindependent=" << (a.xIndependent ? 1 : 0)
     << "\n";
  for (long g = 0; g < a.rows(); ++g) {
    const auto c = grid_coords(g, a.M, a.p.d);
    for (long w = 0; w < a.cols(); ++w) {
      const EigenIndex xi = box_index(w, a.N, a.p.d);
      for (int j = 0; j < a.p.d; ++j) os << c[static_cast<size_t>(j)] << " ";
      for (int j = 0; j < a.p.d; ++j) os << xi.k[static_cast<size_t>(j)] << " ";
      os << fmt17(a.values(g, w).real()) << " " << fmt17(a.values(g, w).imag()) << "\n";
    }
  }
}

inline SymbolTable read_symbol(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError(path + ": empty file");
  const auto kv = detail_io::parse_header(line, 1);
  if (kv.at("_type") != "symboltable") throw IoError(path + ": not a symboltable file");
  const ModelProblem p = detail_io::problem_from_header(kv, 1);
  const int M = detail_io::int_field(kv, "M", 1);
  const int N = detail_io::int_field(kv, "N", 1);
  const Flavor fl = kv.count("flavor") && kv.at("flavor") == "Lstar" ? Flavor::Lstar : Flavor::L;
  SymbolTable a = make_symbol(p, M, N, fl);
  if (kv.count("xindependent")) a.xIndependent = kv.at("xindependent") == "1";
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::array<int, 3> c{0, 0, 0};
    EigenIndex xi;
    xi.d = p.d;
    double re, im;
    for (int j = 0; j < p.d; ++j)
      if (!(ls >> c[static_cast<size_t>(j)]))
        throw IoError(path + ": line " + std::to_string(lineno) + ": bad grid coordinates");
    for (int j = 0; j < p.d; ++j)
      if (!(ls >> xi.k[static_cast<size_t>(j)]))
        throw IoError(path + ": line " + std::to_string(lineno) + ": bad index");
    if (!(ls >> re >> im))
      throw IoError(path + ": line " + std::to_string(lineno) + ": bad complex value");
    a.values(grid_pos(c, M, p.d), box_pos(xi, N)) = Complex(re, im);
  }
  return a;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt17(row[i]);
    os << "\n";
  }
}

inline void write_matrix_csv(const std::string& path, const MatrixXcd& K) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  for (long r = 0; r < K.rows(); ++r) {
    for (long c = 0; c < K.cols(); ++c) {
      if (c) os << ",";
      os << fmt17(K(r, c).real()) << "," << fmt17(K(r, c).imag());
    }
    os << "\n";
  }
}

}  // namespace nhfc

#endif  // NHFC_IO_HPP
