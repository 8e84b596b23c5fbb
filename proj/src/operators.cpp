#include "dfs/operators.hpp"

#include <nlohmann/json.hpp>

namespace dfs {

namespace {

using nlohmann::json;

void check_site(int site, int n) {
  if (site < 1 || site > n)
    throw std::invalid_argument("qubit index " + std::to_string(site) +
                                " out of range [1, " + std::to_string(n) + "]");
}

long full_dim(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (n >= 63) throw ResourceLimitError("qubit count too large");
  long dim = 1L << n;
  check_dimension(dim);
  return dim;
}

ComplexMatrix pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return pauli_x();
    case PauliAxis::Y: return pauli_y();
    default: return pauli_z();
  }
}

}  // namespace

PauliAxis axis_from_string(const std::string& s) {
  if (s == "x") return PauliAxis::X;
  if (s == "y") return PauliAxis::Y;
  if (s == "z") return PauliAxis::Z;
  throw std::invalid_argument("unknown Pauli axis: " + s);
}

std::string axis_to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "x";
    case PauliAxis::Y: return "y";
    default: return "z";
  }
}

ComplexMatrix sigma_on_site(PauliAxis axis, int site, int n) {
  check_site(site, n);
  long dim = full_dim(n);
  ComplexMatrix p = pauli(axis);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  // Qubit 1 is the most significant bit.
  long mask = 1L << (n - site);
  for (long col = 0; col < dim; ++col) {
    int bit = (col & mask) ? 1 : 0;
    for (int row_bit = 0; row_bit < 2; ++row_bit) {
      Complex amp = p(row_bit, bit);
      if (amp == Complex(0, 0)) continue;
      long row = (col & ~mask) | (row_bit ? mask : 0);
      out(row, col) += amp;
    }
  }
  return out;
}

ComplexMatrix collective_op(PauliAxis axis, int n) {
  long dim = full_dim(n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int site = 1; site <= n; ++site) out += sigma_on_site(axis, site, n);
  return out;
}

ComplexMatrix partial_sq_op(int k, int n) {
  check_site(k, n);
  long dim = full_dim(n);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
    for (int site = 1; site <= k; ++site) s += sigma_on_site(axis, site, n);
    out += s * s;
  }
  return out;
}

ComplexMatrix exchange_op(int i, int j, int n) {
  check_site(i, n);
  check_site(j, n);
  if (i == j) throw std::invalid_argument("exchange needs distinct qubits");
  long dim = full_dim(n);
  long mi = 1L << (n - i);
  long mj = 1L << (n - j);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    long bi = (col & mi) ? 1 : 0;
    long bj = (col & mj) ? 1 : 0;
    long row = (col & ~(mi | mj)) | (bj ? mi : 0) | (bi ? mj : 0);
    out(row, col) = 1.0;
  }
  return out;
}

OperatorSpec OperatorSpec::sigma(PauliAxis axis, int site, int n) {
  return {Sigma{axis, site}, n};
}
OperatorSpec OperatorSpec::collective(PauliAxis axis, int n) {
  return {Collective{axis}, n};
}
OperatorSpec OperatorSpec::partial_sq(int k, int n) {
  return {PartialSq{k}, n};
}
OperatorSpec OperatorSpec::exchange(int i, int j, int n) {
  return {Exchange{i, j}, n};
}
OperatorSpec OperatorSpec::t_family(int i, int j, double z1, double z2,
                                    double z3, double z4, Complex h, int n) {
  return {TFamily{i, j, z1, z2, z3, z4, h}, n};
}
OperatorSpec OperatorSpec::heisenberg(
    std::vector<double> epsilon, std::vector<std::vector<double>> coupling) {
  int n = static_cast<int>(epsilon.size());
  return {Heisenberg{std::move(epsilon), std::move(coupling)}, n};
}

ComplexMatrix build(const OperatorSpec& spec) {
  long dim = full_dim(spec.n);
  const int n = spec.n;
  return std::visit(
      [&](const auto& k) -> ComplexMatrix {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, OperatorSpec::Sigma>) {
          return sigma_on_site(k.axis, k.site, n);
        } else if constexpr (std::is_same_v<T, OperatorSpec::Collective>) {
          return collective_op(k.axis, n);
        } else if constexpr (std::is_same_v<T, OperatorSpec::PartialSq>) {
          return partial_sq_op(k.k, n);
        } else if constexpr (std::is_same_v<T, OperatorSpec::Exchange>) {
          return exchange_op(k.i, k.j, n);
        } else if constexpr (std::is_same_v<T, OperatorSpec::TFamily>) {
          check_site(k.i, n);
          check_site(k.j, n);
          if (k.i == k.j)
            throw std::invalid_argument("t_family needs distinct qubits");
          // 4x4 in the {|00>,|01>,|10>,|11>} basis of qubits (i, j),
          // identity elsewhere.
          long mi = 1L << (n - k.i);
          long mj = 1L << (n - k.j);
          ComplexMatrix t(4, 4);
          t << k.z1, 0, 0, 0,
               0, k.z2, k.h, 0,
               0, std::conj(k.h), k.z3, 0,
               0, 0, 0, k.z4;
          ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
          for (long col = 0; col < dim; ++col) {
            int cidx = ((col & mi) ? 2 : 0) | ((col & mj) ? 1 : 0);
            for (int ridx = 0; ridx < 4; ++ridx) {
              Complex amp = t(ridx, cidx);
              if (amp == Complex(0, 0)) continue;
              long row = (col & ~(mi | mj)) | ((ridx & 2) ? mi : 0) |
                         ((ridx & 1) ? mj : 0);
              out(row, col) += amp;
            }
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, OperatorSpec::Heisenberg>);
          if (static_cast<int>(k.epsilon.size()) != n ||
              static_cast<int>(k.coupling.size()) != n)
            throw std::invalid_argument("heisenberg parameter sizes");
          for (int i = 0; i < n; ++i) {
            if (static_cast<int>(k.coupling[i].size()) != n)
              throw std::invalid_argument("heisenberg coupling not square");
            for (int j = 0; j < n; ++j)
              if (std::abs(k.coupling[i][j] - k.coupling[j][i]) > 0)
                throw std::invalid_argument("heisenberg coupling not symmetric");
          }
          ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
          for (int i = 1; i <= n; ++i)
            out += k.epsilon[i - 1] * sigma_on_site(PauliAxis::Z, i, n);
          for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
              if (i == j) continue;
              double c = 0.5 * k.coupling[i - 1][j - 1];
              if (c == 0.0) continue;
              for (PauliAxis axis :
                   {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
                out += c * (sigma_on_site(axis, i, n) *
                            sigma_on_site(axis, j, n));
            }
          return out;
        }
      },
      spec.kind);
}

std::string OperatorSpec::to_json() const {
  json j;
  j["n"] = n;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Sigma>) {
          j["kind"] = "sigma";
          j["axis"] = axis_to_string(k.axis);
          j["site"] = k.site;
        } else if constexpr (std::is_same_v<T, Collective>) {
          j["kind"] = "collective";
          j["axis"] = axis_to_string(k.axis);
        } else if constexpr (std::is_same_v<T, PartialSq>) {
          j["kind"] = "partial_sq";
          j["k"] = k.k;
        } else if constexpr (std::is_same_v<T, Exchange>) {
          j["kind"] = "exchange";
          j["i"] = k.i;
          j["j"] = k.j;
        } else if constexpr (std::is_same_v<T, TFamily>) {
          j["kind"] = "t_family";
          j["i"] = k.i;
          j["j"] = k.j;
          j["z"] = {k.z1, k.z2, k.z3, k.z4};
          j["h"] = {k.h.real(), k.h.imag()};
        } else {
          j["kind"] = "heisenberg";
          j["epsilon"] = k.epsilon;
          j["coupling"] = k.coupling;
        }
      },
      kind);
  return j.dump();
}

OperatorSpec OperatorSpec::from_json(const std::string& text) {
  json j = json::parse(text);
  int n = j.at("n").get<int>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sigma")
    return sigma(axis_from_string(j.at("axis").get<std::string>()),
                 j.at("site").get<int>(), n);
  if (kind == "collective")
    return collective(axis_from_string(j.at("axis").get<std::string>()), n);
  if (kind == "partial_sq") return partial_sq(j.at("k").get<int>(), n);
  if (kind == "exchange")
    return exchange(j.at("i").get<int>(), j.at("j").get<int>(), n);
  if (kind == "t_family") {
    auto z = j.at("z").get<std::vector<double>>();
    auto h = j.at("h").get<std::vector<double>>();
    if (z.size() != 4 || h.size() != 2)
      throw std::invalid_argument("t_family json: need 4 z values and [re,im] h");
    return t_family(j.at("i").get<int>(), j.at("j").get<int>(), z[0], z[1],
                    z[2], z[3], Complex(h[0], h[1]), n);
  }
  if (kind == "heisenberg")
    return heisenberg(j.at("epsilon").get<std::vector<double>>(),
                      j.at("coupling").get<std::vector<std::vector<double>>>());
  throw std::invalid_argument("unknown operator kind: " + kind);
}

CommuteReport check_commuting_family(int n) {
  CommuteReport report;
  std::vector<ComplexMatrix> sq;
  for (int k = 1; k <= n; ++k) sq.push_back(partial_sq_op(k, n));
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      report.worst = std::max(report.worst, max_abs(commutator(sq[k], sq[l])));
  report.pass = report.worst <= 1e-10;
  return report;
}

CommuteReport check_heisenberg_preserves_wcd(
    int n, const std::vector<double>& epsilon,
    const std::vector<std::vector<double>>& coupling) {
  CommuteReport report;
  ComplexMatrix h = build(OperatorSpec::heisenberg(epsilon, coupling));
  ComplexMatrix sz = collective_op(PauliAxis::Z, n);
  report.worst = max_abs(commutator(h, sz));
  report.pass = report.worst <= 1e-10;
  return report;
}

}  // namespace dfs
