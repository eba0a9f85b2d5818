#include "xz24/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <complex>
#include <map>
#include <sstream>

#include "xz24/errors.hpp"

namespace xz24 {

namespace {

using Complex = std::complex<double>;

bool axis_from_letter(char c, PauliAxis& out) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'X': out = PauliAxis::X; return true;
    case 'Y': out = PauliAxis::Y; return true;
    case 'Z': out = PauliAxis::Z; return true;
    default: return false;
  }
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool factor_less(const PauliFactor& a, const PauliFactor& b) {
  return a.qubit < b.qubit;
}

// Deterministic term order: identity first, then lexicographic by
// (qubit, axis) factor sequences.
bool term_key_less(const std::vector<PauliFactor>& a,
                   const std::vector<PauliFactor>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const PauliFactor& x, const PauliFactor& y) {
        if (x.qubit != y.qubit) return x.qubit < y.qubit;
        return static_cast<int>(x.axis) < static_cast<int>(y.axis);
      });
}

std::string format_coeff(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

char axis_letter(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  return '?';
}

Hamiltonian Hamiltonian::from_terms(std::vector<PauliTerm> terms,
                                    std::uint32_t n_qubits_hint) {
  std::uint32_t max_index = 0;
  bool any_factor = false;
  for (auto& term : terms) {
    if (!std::isfinite(term.coefficient))
      throw_invalid("term coefficient must be finite");
    std::sort(term.factors.begin(), term.factors.end(), factor_less);
    for (std::size_t i = 0; i + 1 < term.factors.size(); ++i) {
      if (term.factors[i].qubit == term.factors[i + 1].qubit)
        throw_invalid("qubit " + std::to_string(term.factors[i].qubit) +
                      " appears twice in one term");
    }
    for (const auto& f : term.factors) {
      any_factor = true;
      max_index = std::max(max_index, f.qubit);
    }
  }

  std::uint32_t n_qubits = any_factor ? max_index + 1 : 1;
  if (n_qubits_hint > 0) {
    if (n_qubits_hint < n_qubits)
      throw_invalid("declared qubit count " + std::to_string(n_qubits_hint) +
                    " is smaller than highest qubit index + 1 (" +
                    std::to_string(n_qubits) + ")");
    n_qubits = n_qubits_hint;
  }

  // Merge terms with identical factor lists; keep deterministic order.
  std::map<std::vector<PauliFactor>, double,
           bool (*)(const std::vector<PauliFactor>&, const std::vector<PauliFactor>&)>
      merged(term_key_less);
  for (auto& term : terms) merged[std::move(term.factors)] += term.coefficient;

  Hamiltonian h;
  h.n_qubits_ = n_qubits;
  h.terms_.reserve(merged.size());
  for (auto& [factors, coeff] : merged)
    h.terms_.push_back(PauliTerm{coeff, factors});
  return h;
}

Hamiltonian Hamiltonian::parse(std::string_view text) {
  std::vector<PauliTerm> terms;
  std::uint32_t header_qubits = 0;
  bool seen_term = false;

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    auto fail = [&](const std::string& what) {
      throw_parse("line " + std::to_string(line_no) + ": " + what);
    };

    if (tokens[0] == "qubits") {
      if (seen_term || header_qubits > 0)
        fail("'qubits' header must appear once, before any term");
      if (tokens.size() != 2) fail("expected 'qubits <n>'");
      int n = 0;
      auto [ptr, ec] = std::from_chars(tokens[1].data(),
                                       tokens[1].data() + tokens[1].size(), n);
      if (ec != std::errc() || ptr != tokens[1].data() + tokens[1].size() || n < 1)
        fail("invalid qubit count '" + tokens[1] + "'");
      header_qubits = static_cast<std::uint32_t>(n);
      continue;
    }

    PauliTerm term;
    if (!parse_double(tokens[0], term.coefficient))
      fail("non-numeric coefficient '" + tokens[0] + "'");
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const std::string& tok = tokens[i];
      PauliAxis axis;
      if (tok.size() < 2 || !axis_from_letter(tok[0], axis))
        fail("malformed factor '" + tok + "' (expected X<q>, Y<q> or Z<q>)");
      if (tok[1] == '-') fail("negative qubit index in '" + tok + "'");
      unsigned long q = 0;
      auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), q);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        fail("invalid qubit index in '" + tok + "'");
      for (const auto& f : term.factors)
        if (f.qubit == q)
          fail("qubit " + std::to_string(q) + " appears twice in one term");
      term.factors.push_back({static_cast<std::uint32_t>(q), axis});
    }
    terms.push_back(std::move(term));
    seen_term = true;

    if (pos > text.size()) break;
  }

  try {
    return from_terms(std::move(terms), header_qubits);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument)
      throw_parse(e.what());
    throw;
  }
}

double Hamiltonian::l1_norm_bound() const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += std::abs(term.coefficient);
  return sum;
}

Hamiltonian Hamiltonian::offset(double s0) const {
  if (!std::isfinite(s0)) throw_invalid("offset must be finite");
  std::vector<PauliTerm> terms = terms_;
  terms.push_back(PauliTerm{s0, {}});
  return from_terms(std::move(terms), n_qubits_);
}

double Hamiltonian::basis_expectation(std::string_view bits) const {
  if (bits.size() != n_qubits_)
    throw_invalid("bitstring length " + std::to_string(bits.size()) +
                  " does not match qubit count " + std::to_string(n_qubits_));
  for (char c : bits)
    if (c != '0' && c != '1') throw_invalid("bitstring must contain only 0/1");

  double value = 0.0;
  for (const auto& term : terms_) {
    int sign = 1;
    bool diagonal = true;
    for (const auto& f : term.factors) {
      if (f.axis != PauliAxis::Z) {
        diagonal = false;
        break;
      }
      if (bits[f.qubit] == '1') sign = -sign;
    }
    if (diagonal) value += sign * term.coefficient;
  }
  return value;
}

Eigen::MatrixXcd Hamiltonian::dense_matrix(std::uint32_t qubit_cap) const {
  if (n_qubits_ > qubit_cap)
    throw_dimension("dense matrix for " + std::to_string(n_qubits_) +
                    " qubits exceeds the cap of " + std::to_string(qubit_cap));
  const std::size_t dim = std::size_t{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);

  for (const auto& term : terms_) {
    std::size_t flip_mask = 0;
    for (const auto& f : term.factors)
      if (f.axis != PauliAxis::Z)
        flip_mask |= std::size_t{1} << (n_qubits_ - 1 - f.qubit);

    for (std::size_t col = 0; col < dim; ++col) {
      Complex amp = term.coefficient;
      for (const auto& f : term.factors) {
        const bool bit = (col >> (n_qubits_ - 1 - f.qubit)) & 1;
        switch (f.axis) {
          case PauliAxis::Z: amp *= bit ? -1.0 : 1.0; break;
          case PauliAxis::Y: amp *= bit ? Complex(0, -1) : Complex(0, 1); break;
          case PauliAxis::X: break;
        }
      }
      m(col ^ flip_mask, col) += amp;
    }
  }
  return m;
}

std::string Hamiltonian::serialize() const {
  std::ostringstream out;
  out << "qubits " << n_qubits_ << '\n';
  for (const auto& term : terms_) {
    out << format_coeff(term.coefficient);
    for (const auto& f : term.factors)
      out << ' ' << axis_letter(f.axis) << f.qubit;
    out << '\n';
  }
  return out.str();
}

}  // namespace xz24
