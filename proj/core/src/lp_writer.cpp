#include "wdrjcc/lp_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace wdrjcc {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Names in LP files may not contain whitespace or operators.
std::string lp_name(const Model& m, VarId id) {
  std::string name = m.variable_name(id);
  for (char& c : name)
    if (c == ' ' || c == ':' || c == '+' || c == '-' || c == '<' || c == '>' ||
        c == '=' || c == '*' || c == '/' || c == '^' || c == '[' || c == ']')
      c = '_';
  return name;
}

void write_linear(std::ostream& os, const Model& m, const std::vector<Term>& terms) {
  if (terms.empty()) {
    os << " 0";
    return;
  }
  for (const Term& t : terms) {
    os << (t.coef < 0 ? " - " : " + ") << num(std::abs(t.coef)) << ' '
       << lp_name(m, t.var);
  }
}

}  // namespace

std::string emit_lp_text(const Model& input) {
  const Model m = input.has_piecewise() ? input.expand_piecewise() : input;
  std::ostringstream os;
  os << "\\ generated by wdrjcc\n";
  os << (m.objective().sense == ObjSense::kMinimize ? "Minimize\n" : "Maximize\n");
  os << " obj:";
  write_linear(os, m, m.objective().terms);
  if (m.objective().constant != 0.0)
    os << (m.objective().constant < 0 ? " - " : " + ")
       << num(std::abs(m.objective().constant));
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < m.num_constraints(); ++i) {
    const LinRow& row = m.constraint(static_cast<RowId>(i));
    os << " c" << i << ':';
    write_linear(os, m, row.terms);
    switch (row.sense) {
      case RowSense::kLessEqual: os << " <= "; break;
      case RowSense::kGreaterEqual: os << " >= "; break;
      case RowSense::kEqual: os << " = "; break;
    }
    os << num(row.rhs) << '\n';
  }
  os << "Bounds\n";
  std::vector<VarId> binaries;
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const VarId id = static_cast<VarId>(j);
    const VarDecl& v = m.variable(id);
    if (v.kind == VarKind::kBinary) binaries.push_back(id);
    const std::string name = lp_name(m, id);
    if (std::isinf(v.lower) && std::isinf(v.upper))
      os << ' ' << name << " free\n";
    else
      os << ' ' << num(v.lower) << " <= " << name << " <= " << num(v.upper) << '\n';
  }
  if (!binaries.empty()) {
    os << "Binaries\n";
    for (VarId id : binaries) os << ' ' << lp_name(m, id) << '\n';
  }
  os << "End\n";
  return os.str();
}

std::string emit_mps_text(const Model& input) {
  const Model m = input.has_piecewise() ? input.expand_piecewise() : input;
  auto col = [](std::size_t j) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "C%07zu", j);
    return std::string(buf);
  };
  auto rowname = [](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "R%07zu", i);
    return std::string(buf);
  };
  auto field = [](const std::string& s, std::size_t width) {
    std::string out = s;
    out.resize(std::max(width, s.size()), ' ');
    return out;
  };
  // MPS has no native maximize in the fixed format; negate the objective.
  const double sign = m.objective().sense == ObjSense::kMinimize ? 1.0 : -1.0;

  std::vector<std::vector<std::pair<std::size_t, double>>> columns(m.num_variables());
  for (const Term& t : m.objective().terms)
    columns[static_cast<std::size_t>(t.var)].emplace_back(SIZE_MAX, sign * t.coef);
  for (std::size_t i = 0; i < m.num_constraints(); ++i)
    for (const Term& t : m.constraint(static_cast<RowId>(i)).terms)
      columns[static_cast<std::size_t>(t.var)].emplace_back(i, t.coef);

  std::ostringstream os;
  os << "NAME          WDRJCC\n";
  os << "ROWS\n N  OBJ\n";
  for (std::size_t i = 0; i < m.num_constraints(); ++i) {
    const char* type = "L";
    switch (m.constraint(static_cast<RowId>(i)).sense) {
      case RowSense::kLessEqual: type = "L"; break;
      case RowSense::kGreaterEqual: type = "G"; break;
      case RowSense::kEqual: type = "E"; break;
    }
    os << ' ' << type << "  " << rowname(i) << '\n';
  }
  os << "COLUMNS\n";
  bool in_int = false;
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const bool is_int = m.variable(static_cast<VarId>(j)).kind == VarKind::kBinary;
    if (is_int != in_int) {
      os << "    MARKER                 '" << (is_int ? "INTORG" : "INTEND") << "'\n";
      in_int = is_int;
    }
    if (columns[j].empty()) columns[j].emplace_back(SIZE_MAX, 0.0);
    for (const auto& [row, value] : columns[j]) {
      os << "    " << field(col(j), 8) << "  "
         << field(row == SIZE_MAX ? "OBJ" : rowname(row), 8) << "  " << num(value) << '\n';
    }
  }
  if (in_int) os << "    MARKER                 'INTEND'\n";
  os << "RHS\n";
  for (std::size_t i = 0; i < m.num_constraints(); ++i) {
    const double rhs = m.constraint(static_cast<RowId>(i)).rhs;
    if (rhs != 0.0) os << "    RHS       " << field(rowname(i), 8) << "  " << num(rhs) << '\n';
  }
  if (m.objective().constant != 0.0)
    os << "    RHS       OBJ       " << num(-sign * m.objective().constant) << '\n';
  os << "BOUNDS\n";
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const VarDecl& v = m.variable(static_cast<VarId>(j));
    const std::string c = field(col(j), 8);
    if (v.kind == VarKind::kBinary && v.lower == 0.0 && v.upper == 1.0) {
      os << " BV BND       " << c << '\n';
    } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
      os << " FR BND       " << c << '\n';
    } else if (v.lower == v.upper) {
      os << " FX BND       " << c << "  " << num(v.lower) << '\n';
    } else {
      if (std::isinf(v.lower))
        os << " MI BND       " << c << '\n';
      else if (v.lower != 0.0)
        os << " LO BND       " << c << "  " << num(v.lower) << '\n';
      if (!std::isinf(v.upper)) os << " UP BND       " << c << "  " << num(v.upper) << '\n';
    }
  }
  os << "ENDATA\n";
  return os.str();
}

}  // namespace wdrjcc
