#include "adhyp/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace adhyp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void write_header(std::ofstream& out, const KeyValues& header) {
  for (const auto& [k, v] : header) out << "# " << k << " = " << v << '\n';
}

double parse_double(const std::string& tok, const std::string& path, long line) {
  const std::string t = trim(tok);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::out_of_range&) {
    // stod rejects subnormals; they are effectively zero here.
    return 0.0;
  } catch (const std::exception&) {
    throw FormatError(path + ":" + std::to_string(line) + ": not a number: '" + t + "'");
  }
}

}  // namespace

std::vector<std::string> field_columns(int dims) {
  if (dims == 2) return {"x", "y", "rho", "u", "v", "p", "E", "tau", "Ebar"};
  return {"x", "rho", "u", "p", "E", "tau", "Ebar"};
}

void write_field_file(const std::string& path, const Field& U, const IndicatorField& ind,
                      const GasModel& gas, const KeyValues& header) {
  const Grid& g = U.grid();
  auto out = open_out(path);
  write_header(out, header);
  const auto cols = field_columns(g.dims);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for_each_cell(g, [&](int i, int k) {
    const ConservedState& s = U(i, k);
    const double rho = s.rho();
    const double u = s.mom_x() / rho;
    const double v = s.mom_y() / rho;
    const double p = pressure(s, gas);
    out << fmt(g.x(i)) << ',';
    if (g.is_2d()) out << fmt(g.y(k)) << ',';
    out << fmt(rho) << ',' << fmt(u) << ',';
    if (g.is_2d()) out << fmt(v) << ',';
    out << fmt(p) << ',' << fmt(s.energy()) << ',' << fmt(ind.tau(i, k)) << ','
        << fmt(ind.E_bar(i, k)) << '\n';
  });
  if (!out) throw IoError("error writing '" + path + "'");
}

void write_indicator_file(const std::string& path, const IndicatorField& ind, const KeyValues& header) {
  const Grid& g = ind.E_bar.grid();
  auto out = open_out(path);
  write_header(out, header);
  out << (g.is_2d() ? "x,y,ln_Ebar\n" : "x,ln_Ebar\n");
  for_each_cell(g, [&](int i, int k) {
    out << fmt(g.x(i)) << ',';
    if (g.is_2d()) out << fmt(g.y(k)) << ',';
    out << fmt(std::log(ind.E_bar(i, k))) << '\n';
  });
  if (!out) throw IoError("error writing '" + path + "'");
}

const std::vector<double>& FieldTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw FormatError("field file has no column '" + name + "'");
  return data[static_cast<std::size_t>(it - columns.begin())];
}

bool FieldTable::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

FieldTable read_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  FieldTable t;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const auto eq = s.find('=');
      if (eq != std::string::npos) t.header[trim(s.substr(1, eq - 1))] = trim(s.substr(eq + 1));
      continue;
    }
    std::vector<std::string> toks;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) toks.push_back(trim(tok));
    if (t.columns.empty()) {
      t.columns = toks;
      t.data.assign(toks.size(), {});
      continue;
    }
    if (toks.size() != t.columns.size())
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(t.columns.size()) + " columns, found " +
                        std::to_string(toks.size()));
    for (std::size_t c = 0; c < toks.size(); ++c) t.data[c].push_back(parse_double(toks[c], path, lineno));
  }
  if (t.columns.empty()) throw FormatError(path + ": no column header line");
  return t;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  KeyValues kv;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  return kv;
}

void write_key_values(const std::string& path, const KeyValues& kv) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
  if (!out) throw IoError("error writing '" + path + "'");
}

Norm parse_norm(const std::string& s) {
  if (s == "L1" || s == "l1") return Norm::L1;
  if (s == "L2" || s == "l2") return Norm::L2;
  if (s == "Linf" || s == "linf" || s == "Lmax") return Norm::Linf;
  throw std::invalid_argument("unknown norm '" + s + "' (expected L1, L2 or Linf)");
}

TableMesh infer_mesh(const FieldTable& t) {
  TableMesh m;
  const auto& x = t.column("x");
  if (x.size() < 2) throw FormatError("field file needs at least two cells");
  if (t.has_column("y")) {
    const auto& y = t.column("y");
    m.dims = 2;
    std::size_t nx = 1;
    while (nx < y.size() && y[nx] == y[0]) ++nx;
    if (x.size() % nx != 0) throw FormatError("2-D field file is not a full rectangular grid");
    m.nx = static_cast<int>(nx);
    m.ny = static_cast<int>(x.size() / nx);
    if (m.nx < 2 || m.ny < 2) throw FormatError("2-D field file needs at least 2x2 cells");
    m.dx = x[1] - x[0];
    m.dy = y[nx] - y[0];
    m.y_min = y[0] - 0.5 * m.dy;
    m.y_max = y.back() + 0.5 * m.dy;
  } else {
    m.nx = static_cast<int>(x.size());
    m.dx = x[1] - x[0];
  }
  m.x_min = x[0] - 0.5 * m.dx;
  m.x_max = x[static_cast<std::size_t>(m.nx) - 1] + 0.5 * m.dx;
  return m;
}

namespace {

bool same_extent(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * scale; }

int refinement(int coarse, int fine) {
  if (coarse <= 0 || fine % coarse != 0)
    throw FormatError("incompatible meshes: " + std::to_string(fine) + " cells is not a multiple of " +
                      std::to_string(coarse));
  return fine / coarse;
}

double reduce(double acc, double d, double w, Norm norm) {
  switch (norm) {
    case Norm::L1: return acc + w * std::abs(d);
    case Norm::L2: return acc + w * d * d;
    case Norm::Linf: return std::max(acc, std::abs(d));
  }
  return acc;
}

double finish(double acc, Norm norm) { return norm == Norm::L2 ? std::sqrt(acc) : acc; }

}  // namespace

double density_error_1d(const std::vector<double>& coarse, const std::vector<double>& fine,
                        double x_min, double x_max, Norm norm, const std::optional<Window>& window) {
  const int nc = static_cast<int>(coarse.size());
  const int r = refinement(nc, static_cast<int>(fine.size()));
  const double dx = (x_max - x_min) / nc;
  double acc = 0.0;
  for (int i = 0; i < nc; ++i) {
    const double xc = x_min + (i + 0.5) * dx;
    if (window && (xc < window->lo || xc > window->hi)) continue;
    double avg = 0.0;
    for (int m = 0; m < r; ++m) avg += fine[static_cast<std::size_t>(i * r + m)];
    avg /= r;
    acc = reduce(acc, coarse[static_cast<std::size_t>(i)] - avg, dx, norm);
  }
  return finish(acc, norm);
}

double density_error(const FieldTable& a, const FieldTable& b, Norm norm, const std::optional<Window>& window) {
  const TableMesh ma = infer_mesh(a);
  const TableMesh mb = infer_mesh(b);
  if (ma.dims != mb.dims) throw FormatError("incompatible meshes: 1-D file compared with 2-D file");
  const bool a_coarse = static_cast<long>(ma.nx) * ma.ny <= static_cast<long>(mb.nx) * mb.ny;
  const FieldTable& tc = a_coarse ? a : b;
  const FieldTable& tf = a_coarse ? b : a;
  const TableMesh& mc = a_coarse ? ma : mb;
  const TableMesh& mf = a_coarse ? mb : ma;

  const double xs = std::max(std::abs(mc.x_min), std::abs(mc.x_max)) + (mc.x_max - mc.x_min);
  if (!same_extent(mc.x_min, mf.x_min, xs) || !same_extent(mc.x_max, mf.x_max, xs))
    throw FormatError("incompatible meshes: x-extents differ");

  const auto& rc = tc.column("rho");
  const auto& rf = tf.column("rho");
  if (mc.dims == 1) return density_error_1d(rc, rf, mc.x_min, mc.x_max, norm, window);

  const double ys = std::max(std::abs(mc.y_min), std::abs(mc.y_max)) + (mc.y_max - mc.y_min);
  if (!same_extent(mc.y_min, mf.y_min, ys) || !same_extent(mc.y_max, mf.y_max, ys))
    throw FormatError("incompatible meshes: y-extents differ");
  const int rx = refinement(mc.nx, mf.nx);
  const int ry = refinement(mc.ny, mf.ny);
  const double dx = (mc.x_max - mc.x_min) / mc.nx;
  const double dy = (mc.y_max - mc.y_min) / mc.ny;
  double acc = 0.0;
  for (int k = 0; k < mc.ny; ++k)
    for (int i = 0; i < mc.nx; ++i) {
      const double xc = mc.x_min + (i + 0.5) * dx;
      if (window && (xc < window->lo || xc > window->hi)) continue;
      double avg = 0.0;
      for (int q = 0; q < ry; ++q)
        for (int m = 0; m < rx; ++m)
          avg += rf[static_cast<std::size_t>(k * ry + q) * static_cast<std::size_t>(mf.nx) +
                    static_cast<std::size_t>(i * rx + m)];
      avg /= rx * ry;
      acc = reduce(acc, rc[static_cast<std::size_t>(k) * static_cast<std::size_t>(mc.nx) +
                           static_cast<std::size_t>(i)] - avg,
                   dx * dy, norm);
    }
  return finish(acc, norm);
}

}  // namespace adhyp
