#include "lieth/root_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace lieth {

Series series_from_char(char c) {
  switch (c) {
    case 'A': return Series::A;
    case 'B': return Series::B;
    case 'C': return Series::C;
    case 'D': return Series::D;
    default: throw ConfigError(std::string("unsupported series '") + c + "'");
  }
}

char series_to_char(Series s) { return static_cast<char>(s); }

namespace {

int coord_height(const RootCoords& c) {
  return std::accumulate(c.begin(), c.end(), 0);
}

bool coords_nonneg(const RootCoords& c) {
  for (int x : c)
    if (x < 0) return false;
  return true;
}

}  // namespace

RootSystem RootSystem::build(Series s, int rank) {
  int lo = (s == Series::A) ? 1 : (s == Series::D) ? 3 : 2;
  if (rank < lo || rank > 6)
    throw ConfigError(std::string("series ") + series_to_char(s) + " supports rank " +
                      std::to_string(lo) + " through 6, got " + std::to_string(rank));

  RootSystem rs;
  rs.series_ = s;
  rs.rank_ = rank;

  // Symmetrizable Cartan data: cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j).
  rs.cartan_.assign(rank, std::vector<int>(rank, 0));
  rs.simple_norm2_.assign(rank, Rat(2));
  for (int i = 0; i < rank; ++i) rs.cartan_[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) {
      rs.cartan_[i][i + 1] = -1;
      rs.cartan_[i + 1][i] = -1;
    }
  };
  switch (s) {
    case Series::A:
      chain(rank);
      break;
    case Series::B:
      chain(rank);
      rs.simple_norm2_[rank - 1] = Rat(1);
      rs.cartan_[rank - 2][rank - 1] = -2;  // long against short coroot
      rs.cartan_[rank - 1][rank - 2] = -1;
      break;
    case Series::C:
      chain(rank);
      rs.simple_norm2_[rank - 1] = Rat(4);
      rs.cartan_[rank - 2][rank - 1] = -1;
      rs.cartan_[rank - 1][rank - 2] = -2;
      break;
    case Series::D:
      chain(rank - 1);
      rs.cartan_[rank - 3][rank - 1] = -1;
      rs.cartan_[rank - 1][rank - 3] = -1;
      break;
  }
  // Consistency of the symmetrization (a_i, a_j) = cartan(i,j) (a_j, a_j)/2.
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rat gij = Rat(rs.cartan_[i][j]) * rs.simple_norm2_[j] / 2;
      Rat gji = Rat(rs.cartan_[j][i]) * rs.simple_norm2_[i] / 2;
      if (gij != gji) throw NumericalError("Cartan symmetrization failed");
    }

  // Enumerate roots as the closure of the simple roots under simple
  // reflections; every root is Weyl conjugate to a simple root.
  std::set<RootCoords> seen;
  std::vector<RootCoords> queue;
  for (int i = 0; i < rank; ++i) {
    RootCoords c(rank, 0);
    c[i] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  auto reflect_coords = [&](int i, RootCoords c) {
    int pairing = 0;
    for (int k = 0; k < rank; ++k) pairing += rs.cartan_[k][i] * c[k];
    c[i] -= pairing;
    return c;
  };
  while (!queue.empty()) {
    RootCoords c = queue.back();
    queue.pop_back();
    for (int i = 0; i < rank; ++i) {
      RootCoords r = reflect_coords(i, c);
      if (seen.insert(r).second) queue.push_back(r);
    }
  }

  std::vector<RootCoords> pos;
  for (const auto& c : seen)
    if (coords_nonneg(c)) pos.push_back(c);
  // Height first; ties resolved so that earlier simple coordinates dominate,
  // which puts alpha_i at index i and makes the first decomposition of a sum
  // start from the lowest simple root.
  std::sort(pos.begin(), pos.end(), [](const RootCoords& a, const RootCoords& b) {
    int ha = coord_height(a), hb = coord_height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  rs.pos_ = static_cast<int>(pos.size());
  rs.roots_ = pos;
  for (const auto& c : pos) {
    RootCoords n(c);
    for (int& x : n) x = -x;
    rs.roots_.push_back(n);
  }

  rs.simple_idx_.assign(rank, -1);
  for (int t = 0; t < rs.pos_; ++t) {
    if (coord_height(rs.roots_[t]) == 1) {
      for (int i = 0; i < rank; ++i)
        if (rs.roots_[t][i] == 1) rs.simple_idx_[i] = t;
    }
  }

  std::map<RootCoords, int> index;
  for (int t = 0; t < rs.num_roots(); ++t) index[rs.roots_[t]] = t;
  rs.reflect_.assign(rank, std::vector<int>(rs.num_roots(), -1));
  for (int i = 0; i < rank; ++i)
    for (int t = 0; t < rs.num_roots(); ++t)
      rs.reflect_[i][t] = index.at(reflect_coords(i, rs.roots_[t]));

  // Longest element: drive a strictly dominant pairing vector to the
  // antidominant chamber, recording the reflections used.
  {
    std::vector<Rat> p(rank, Rat(1));
    WeylWord word;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < rank; ++i) {
        if (p[i] > Rat(0)) {
          Rat pi = p[i];
          for (int j = 0; j < rank; ++j) p[j] -= pi * Rat(rs.cartan_[i][j]);
          word.push_back(i);
          moved = true;
          break;
        }
      }
    }
    if (static_cast<int>(word.size()) != rs.pos_)
      throw NumericalError("longest element word has wrong length");
    rs.longest_ = word;
  }

  rs.minus_w0_.assign(rank, -1);
  for (int i = 0; i < rank; ++i) {
    int img = rs.act(rs.longest_, rs.simple_idx_[i]);
    int neg = rs.negative_of(img);
    int slot = -1;
    for (int j = 0; j < rank; ++j)
      if (rs.simple_idx_[j] == neg) slot = j;
    if (slot < 0) throw NumericalError("w0 does not negate the simple roots");
    rs.minus_w0_[i] = slot;
  }

  return rs;
}

int RootSystem::root_index(const RootCoords& c) const {
  for (int t = 0; t < num_roots(); ++t)
    if (roots_[t] == c) return t;
  return -1;
}

int RootSystem::simple_slot(int idx) const {
  for (int i = 0; i < rank_; ++i)
    if (simple_idx_[i] == idx) return i;
  return -1;
}

int RootSystem::height(int idx) const { return coord_height(roots_[idx]); }

Rat RootSystem::norm2(int idx) const {
  const RootCoords& c = roots_[idx];
  Rat n(0);
  for (int i = 0; i < rank_; ++i) {
    if (c[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (c[j] == 0) continue;
      n += Rat(c[i]) * Rat(c[j]) * Rat(cartan_[i][j]) * simple_norm2_[j] / 2;
    }
  }
  return n;
}

int RootSystem::pair_coroot(int idx, int i) const {
  const RootCoords& c = roots_[idx];
  int p = 0;
  for (int k = 0; k < rank_; ++k) p += cartan_[k][i] * c[k];
  return p;
}

int RootSystem::act(const WeylWord& w, int idx) const {
  int t = idx;
  for (auto it = w.rbegin(); it != w.rend(); ++it) t = reflect_[*it][t];
  return t;
}

std::vector<int> RootSystem::span_closure(const std::vector<int>& sigma0) const {
  std::vector<bool> in(rank_, false);
  for (int i : sigma0) {
    if (i < 0 || i >= rank_) throw UsageError("span_closure: simple slot out of range");
    in[i] = true;
  }
  std::vector<int> out;
  for (int t = 0; t < num_roots(); ++t) {
    bool ok = true;
    for (int i = 0; i < rank_ && ok; ++i)
      if (roots_[t][i] != 0 && !in[i]) ok = false;
    if (ok) out.push_back(t);
  }
  return out;
}

WeylWord RootSystem::subset_longest_element(const std::vector<int>& delta0) const {
  std::vector<int> sigma0;
  for (int t : delta0) {
    if (t < 0 || t >= num_roots()) throw UsageError("subset_longest_element: root index out of range");
    int slot = simple_slot(t);
    if (slot >= 0) sigma0.push_back(slot);
  }
  std::vector<int> closure = span_closure(sigma0);
  std::vector<int> sorted_in(delta0);
  std::sort(sorted_in.begin(), sorted_in.end());
  sorted_in.erase(std::unique(sorted_in.begin(), sorted_in.end()), sorted_in.end());
  if (closure != sorted_in)
    throw UsageError("subset_longest_element: subset is not the span closure of simple roots");

  std::vector<Rat> p(rank_, Rat(0));
  for (int i : sigma0) p[i] = Rat(1);
  WeylWord word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : sigma0) {
      if (p[i] > Rat(0)) {
        Rat pi = p[i];
        for (int j : sigma0) p[j] -= pi * Rat(cartan_[i][j]);
        word.push_back(i);
        moved = true;
        break;
      }
    }
  }
  if (2 * word.size() != closure.size())
    throw NumericalError("parabolic longest element word has wrong length");
  return word;
}

}  // namespace lieth
