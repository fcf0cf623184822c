#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adhyp/grid.hpp"
#include "adhyp/indicator.hpp"

namespace adhyp {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File content does not follow the field-file layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

/// Field files are comma-separated text. Lines starting with '#' carry
/// "# key = value" header entries, the first other line names the columns:
///   1-D: x,rho,u,p,E,tau,Ebar
///   2-D: x,y,rho,u,v,p,E,tau,Ebar   (rows ordered y-outer, x-inner)
/// E is the total energy density; tau and Ebar come from the indicator.
std::vector<std::string> field_columns(int dims);

void write_field_file(const std::string& path, const Field& U, const IndicatorField& indicator,
                      const GasModel& gas, const KeyValues& header);

/// ln(Ebar) per physical cell: columns x,ln_Ebar (1-D) or x,y,ln_Ebar (2-D).
void write_indicator_file(const std::string& path, const IndicatorField& indicator,
                          const KeyValues& header);

struct FieldTable {
  KeyValues header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[column][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  /// Throws FormatError if the column does not exist.
  const std::vector<double>& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

/// Parses a field file; rejects rows whose column count disagrees with the
/// column line, naming the offending line.
FieldTable read_field_file(const std::string& path);

/// Flat "key = value" files (run metadata and config files).
KeyValues read_key_values(const std::string& path);
void write_key_values(const std::string& path, const KeyValues& kv);

enum class Norm { L1, L2, Linf };
Norm parse_norm(const std::string& s);

struct Window {
  double lo;
  double hi;
};

/// Mesh layout recovered from a field table.
struct TableMesh {
  int dims = 1;
  int nx = 0, ny = 1;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  double dx = 0, dy = 0;
};
TableMesh infer_mesh(const FieldTable& t);

/// Discrete norm of the density difference between two field files. The finer
/// file is restricted to the coarser mesh by averaging the fine cells covering
/// each coarse cell. Cells whose centre lies outside `window` (x-range) are
/// skipped. Throws FormatError for incompatible meshes.
double density_error(const FieldTable& a, const FieldTable& b, Norm norm,
                     const std::optional<Window>& window = std::nullopt);

/// Same, with per-cell density arrays on a 1-D mesh.
double density_error_1d(const std::vector<double>& coarse, const std::vector<double>& fine,
                        double x_min, double x_max, Norm norm,
                        const std::optional<Window>& window = std::nullopt);

}  // namespace adhyp
