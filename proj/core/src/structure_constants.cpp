#include "nilbm/structure_constants.hpp"

#include <sstream>

namespace nilbm {

void StructureConstants::set(int i, int j, int k, const Rat& value) {
  if (i < 1 || i > dim_ || j < 1 || j > dim_ || k < 1 || k > dim_)
    throw std::out_of_range("structure constant index out of range");
  if (value == 0) return;
  entries_[{i, j}][k] = value;
}

Rat StructureConstants::coeff(int i, int j, int k) const {
  auto it = entries_.find({i, j});
  if (it != entries_.end()) {
    auto t = it->second.find(k);
    if (t != it->second.end()) return t->second;
    return Rat(0);
  }
  auto rev = entries_.find({j, i});
  if (rev != entries_.end()) {
    auto t = rev->second.find(k);
    if (t != rev->second.end()) return Rat(-t->second);
  }
  return Rat(0);
}

namespace {

RatVec basis_vec(int dim, int i) {
  RatVec v(dim, Rat(0));
  v[i - 1] = 1;
  return v;
}

}  // namespace

ValidationResult validate(const StructureConstants& sc) {
  const int d = sc.dim();
  // Antisymmetry: [X_i, X_i] = 0 and, where both orders are stored
  // explicitly, c[i][j][k] == -c[j][i][k].
  for (const auto& [ij, terms] : sc.entries()) {
    auto [i, j] = ij;
    for (const auto& [k, c] : terms) {
      if (i == j && c != 0)
        return {ValidationResult::Code::Antisymmetry, i, j, k,
                "nonzero [X" + std::to_string(i) + ",X" + std::to_string(i) + "] coefficient"};
      if (sc.explicit_pair(j, i)) {
        Rat other = sc.coeff(j, i, k);
        if (Rat(c + other) != 0)
          return {ValidationResult::Code::Antisymmetry, i, j, k,
                  "c[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(k) +
                      "] != -c[" + std::to_string(j) + "][" + std::to_string(i) + "][" +
                      std::to_string(k) + "]"};
      }
    }
  }
  // Jacobi, expanded by brute force over all index triples.
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      for (int k = j + 1; k <= d; ++k) {
        RatVec ei = basis_vec(d, i), ej = basis_vec(d, j), ek = basis_vec(d, k);
        RatVec s1 = sc.bracket(sc.bracket(ei, ej), ek);
        RatVec s2 = sc.bracket(sc.bracket(ej, ek), ei);
        RatVec s3 = sc.bracket(sc.bracket(ek, ei), ej);
        for (int t = 0; t < d; ++t) {
          if (Rat(s1[t] + s2[t] + s3[t]) != 0)
            return {ValidationResult::Code::Jacobi, i, j, k,
                    "Jacobi fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ") at coordinate " + std::to_string(t + 1)};
        }
      }
  return {};
}

StructureConstants catalog(const std::string& name) {
  auto parse_arg = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return std::nullopt;
    std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    if (inner.empty()) return std::nullopt;
    for (char c : inner)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoi(inner);
  };

  if (auto d = parse_arg("abelian")) {
    if (*d < 1) throw UnknownGroupError("abelian dimension must be positive");
    return StructureConstants(*d);
  }
  if (auto n = parse_arg("heisenberg")) {
    if (*n < 1) throw UnknownGroupError("heisenberg rank must be positive");
    StructureConstants sc(2 * *n + 1);
    for (int i = 1; i <= *n; ++i) sc.set(i, *n + i, 2 * *n + 1, Rat(1));
    return sc;
  }
  if (name == "engel") {
    StructureConstants sc(4);
    sc.set(1, 2, 3, Rat(1));
    sc.set(1, 3, 4, Rat(1));
    return sc;
  }
  if (name == "free23") {
    // Free nilpotent, rank 2, step 3: X3=[X1,X2], X4=[X1,X3], X5=[X2,X3].
    StructureConstants sc(5);
    sc.set(1, 2, 3, Rat(1));
    sc.set(1, 3, 4, Rat(1));
    sc.set(2, 3, 5, Rat(1));
    return sc;
  }
  throw UnknownGroupError("unknown group '" + name +
                          "'; known: abelian(d), heisenberg(n), engel, free23");
}

StructureConstants change_basis(const StructureConstants& sc, const Mat& change) {
  const int d = sc.dim();
  Mat inv = inverse(change);
  // coords of a vector (in input basis) w.r.t. the new basis: v * inv
  // since rows of `change` are the new basis vectors.
  auto new_coords = [&](const RatVec& v) {
    RatVec out(d, Rat(0));
    for (int k = 0; k < d; ++k) {
      Rat acc(0);
      for (int t = 0; t < d; ++t) acc += v[t] * inv[t][k];
      out[k] = acc;
    }
    return out;
  };
  StructureConstants out(d);
  for (int a = 1; a <= d; ++a)
    for (int b = a + 1; b <= d; ++b) {
      RatVec br = sc.bracket(change[a - 1], change[b - 1]);
      RatVec coords = new_coords(br);
      for (int k = 1; k <= d; ++k)
        if (coords[k - 1] != 0) out.set(a, b, k, coords[k - 1]);
    }
  return out;
}

}  // namespace nilbm
