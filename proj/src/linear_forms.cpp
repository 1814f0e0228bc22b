#include "cusplab/linear_forms.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "cusplab/error.hpp"

namespace cusplab {

namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_rational(std::string_view s, Rational& out) {
  auto slash = s.find('/');
  std::int64_t num = 0, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int(s, num)) return false;
  } else if (!parse_int(s.substr(0, slash), num) || !parse_int(s.substr(slash + 1), den)) {
    return false;
  }
  if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  out = Rational::make(num, den);
  return true;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  if (den < 0) g = -g;
  return {num / g, den / g};
}

Real Rational::value() const { return Real(num) / Real(den); }

LinearForms LinearForms::zero(int rows, int cols) {
  return from_rationals(rows, cols, std::vector<Rational>(static_cast<std::size_t>(rows) * cols));
}

LinearForms LinearForms::from_reals(int rows, int cols, std::vector<Real> values) {
  if (rows < 1 || cols < 1) throw DimensionError("matrix of linear forms needs positive dimensions");
  if (values.size() != static_cast<std::size_t>(rows) * cols) throw DimensionError("entry count mismatch");
  for (const auto& v : values)
    if (!boost::multiprecision::isfinite(v)) throw DomainError("matrix entries must be finite");
  LinearForms f;
  f.rows_ = rows;
  f.cols_ = cols;
  f.values_ = std::move(values);
  return f;
}

LinearForms LinearForms::from_rationals(int rows, int cols, const std::vector<Rational>& values) {
  std::vector<Real> reals;
  std::vector<Rational> reduced;
  for (const auto& r : values) {
    reduced.push_back(Rational::make(r.num, r.den));
    reals.push_back(reduced.back().value());
  }
  auto f = from_reals(rows, cols, std::move(reals));
  f.rationals_ = std::move(reduced);
  return f;
}

LinearForms LinearForms::parse(int rows, int cols, const std::vector<std::string>& tokens) {
  if (tokens.size() != static_cast<std::size_t>(rows) * cols) {
    throw ParseError("expected " + std::to_string(rows * cols) + " matrix entries, found " +
                     std::to_string(tokens.size()));
  }
  std::vector<Rational> rats;
  for (const auto& t : tokens) {
    Rational r;
    if (!parse_rational(t, r)) break;
    rats.push_back(r);
  }
  if (rats.size() == tokens.size()) return from_rationals(rows, cols, rats);
  std::vector<Real> reals;
  for (const auto& t : tokens) reals.push_back(parse_real(t));
  return from_reals(rows, cols, std::move(reals));
}

const Rational& LinearForms::rational(int i, int j) const {
  if (!rationals_) throw DomainError("matrix is not rational");
  return (*rationals_)[index(i, j)];
}

LinearForms LinearForms::transpose() const {
  LinearForms t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.values_.resize(values_.size());
  if (rationals_) t.rationals_.emplace(values_.size());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      t.values_[t.index(j, i)] = values_[index(i, j)];
      if (rationals_) (*t.rationals_)[t.index(j, i)] = (*rationals_)[index(i, j)];
    }
  return t;
}

RealMatrix LinearForms::matrix() const {
  RealMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = values_[index(i, j)];
  return m;
}

LinearForms parse_matrix_text(const std::string& text, int* ell_out, int* m_out) {
  std::istringstream in(text);
  std::string header;
  while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream hs(header);
  std::string a, b, extra;
  if (!(hs >> a >> b) || (hs >> extra)) throw ParseError("matrix header must be 'ell m'");
  std::int64_t ell = 0, m = 0;
  if (!parse_int(a, ell) || !parse_int(b, m) || ell < 1 || m < 1 || ell > 16 || m > 16) {
    throw ParseError("matrix header must hold two positive dimensions");
  }
  std::vector<std::string> tokens;
  std::string line;
  int row_count = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> row;
    for (std::string tok; ls >> tok;) row.push_back(tok);
    if (row.empty()) continue;
    if (static_cast<std::int64_t>(row.size()) != m) {
      throw ParseError("matrix row " + std::to_string(row_count + 1) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(m));
    }
    ++row_count;
    tokens.insert(tokens.end(), row.begin(), row.end());
  }
  if (row_count != ell) throw ParseError("matrix has " + std::to_string(row_count) + " rows, expected " + std::to_string(ell));
  if (ell_out) *ell_out = static_cast<int>(ell);
  if (m_out) *m_out = static_cast<int>(m);
  return LinearForms::parse(static_cast<int>(ell), static_cast<int>(m), tokens);
}

}  // namespace cusplab
