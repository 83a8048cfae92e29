#include "gwt/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gwt {

namespace {

double pow2(std::size_t n) { return std::ldexp(1.0, static_cast<int>(n)); }

Region random_subset(const Region& base, SplitMix64& rng) {
  std::vector<CellId> out;
  for (CellId c : base.cells()) {
    if (rng.next() & 1U) out.push_back(c);
  }
  if (out.empty() && !base.empty()) out.push_back(base.cells()[rng.below(base.size())]);
  return Region(std::move(out));
}

template <typename T>
Candidates<T> finish(std::set<T> items, double domain) {
  Candidates<T> out;
  out.items.assign(items.begin(), items.end());
  out.exhaustive = false;
  out.coverage = domain > 0 ? std::min(1.0, static_cast<double>(out.items.size()) / domain) : 1.0;
  return out;
}

// Cells of `base` sharing neither a cell nor a face with `a`.
Region separate_cells(const Region& a, const Region& base, const Grid& g) {
  const CellMask in_a(a, g);
  std::vector<CellId> out;
  for (CellId c : base.cells()) {
    if (in_a[c]) continue;
    bool touches = false;
    for (CellId n : g.neighbors(c)) touches = touches || in_a[n];
    if (!touches) out.push_back(c);
  }
  return Region(std::move(out));
}

}  // namespace

Candidates<Region> enumerate_subbodies(const Region& body, const Grid& g,
                                       const EnumerationLimits& lim) {
  const std::size_t n = body.size();
  Candidates<Region> out;
  if (n == 0) return out;
  if (n < 63 && (std::uint64_t{1} << n) - 1 <= lim.exhaustive_limit) {
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      out.items.push_back(subset_from_mask(body, m));
    }
    return out;
  }
  std::set<Region> items;
  items.insert(body);
  for (CellId c : body.cells()) {
    items.insert(Region{c});
    items.insert(body - Region{c});
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n && pairs < lim.sample_size; ++i) {
    for (std::size_t j = i + 1; j < n && pairs < lim.sample_size; ++j) {
      const Region a{body.cells()[i]};
      const Region c{body.cells()[j]};
      if (separate_cells(a, c, g).empty()) continue;
      items.insert(a | c);
      ++pairs;
    }
  }
  SplitMix64 rng(lim.seed);
  for (std::size_t s = 0; s < lim.sample_size; ++s) items.insert(random_subset(body, rng));
  return finish(std::move(items), pow2(n) - 1);
}

Candidates<Region> enumerate_universe(const Region& body, const Grid& g,
                                      const EnumerationLimits& lim) {
  // Sources feed density-level scans, so the sampled part is kept smaller.
  EnumerationLimits small = lim;
  small.sample_size = std::max<std::size_t>(lim.sample_size / 8, 1);
  const Candidates<Region> subs = enumerate_subbodies(body, g, small);
  const Region everything = Region::all(g);
  std::set<Region> items(subs.items.begin(), subs.items.end());
  for (const Region& x : subs.items) {
    Region e = everything - x;
    if (!e.empty()) items.insert(std::move(e));
  }
  Candidates<Region> out;
  out.items.assign(items.begin(), items.end());
  out.exhaustive = subs.exhaustive;
  out.coverage = subs.coverage;
  return out;
}

Candidates<std::pair<Region, Region>> enumerate_separate_pairs(const Region& body, const Grid& g,
                                                               const EnumerationLimits& lim) {
  const Candidates<Region> uni = enumerate_universe(body, g, lim);
  const double m = static_cast<double>(uni.items.size());
  if (uni.exhaustive && m * m / 2 <= static_cast<double>(lim.exhaustive_limit) * 128.0) {
    Candidates<std::pair<Region, Region>> out;
    for (std::size_t i = 0; i < uni.items.size(); ++i) {
      // Cells of the closed region plus its face neighbors; a separate region
      // avoids all of them.
      const Region near = uni.items[i] | [&] {
        std::vector<CellId> v;
        for (CellId c : uni.items[i].cells()) {
          for (CellId nb : g.neighbors(c)) v.push_back(nb);
        }
        return Region(std::move(v));
      }();
      const CellMask near_mask(near, g);
      for (std::size_t j = i + 1; j < uni.items.size(); ++j) {
        bool sep = true;
        for (CellId c : uni.items[j].cells()) {
          if (near_mask[c]) {
            sep = false;
            break;
          }
        }
        if (!sep) continue;
        const Region u = uni.items[i] | uni.items[j];
        if (in_material_universe(u, body, g)) out.items.emplace_back(uni.items[i], uni.items[j]);
      }
    }
    return out;
  }

  std::set<std::pair<Region, Region>> items;
  const auto add = [&](Region a, Region c) {
    if (a.empty() || c.empty()) return;
    if (c < a) std::swap(a, c);
    if (in_material_universe(a | c, body, g)) items.emplace(std::move(a), std::move(c));
  };
  for (CellId a : body.cells()) {
    const Region sa{a};
    const Region apart = separate_cells(sa, body, g);
    for (CellId c : apart.cells()) {
      if (items.size() >= lim.sample_size) break;
      if (a < c) add(sa, Region{c});
    }
  }
  SplitMix64 rng(lim.seed ^ 0x5eedULL);
  for (std::size_t s = 0; s < lim.sample_size / 4; ++s) {
    Region a = random_subset(body, rng);
    const Region free = separate_cells(a, body, g);
    if (free.empty()) continue;
    add(std::move(a), random_subset(free, rng));
  }
  const double domain = pow2(body.size()) * pow2(body.size()) / 2;
  return finish(std::move(items), domain);
}

Candidates<Part> enumerate_parts(const Part& atoms, const EnumerationLimits& lim) {
  const std::size_t nc = atoms.cells().size();
  const std::size_t m = atoms.atom_count();
  const auto from_mask = [&](std::uint64_t mask) {
    std::vector<CellId> pc;
    std::vector<FaceId> pf;
    for (std::size_t k = 0; k < m; ++k) {
      if (!((mask >> k) & 1U)) continue;
      if (k < nc) {
        pc.push_back(atoms.cells()[k]);
      } else {
        pf.push_back(atoms.faces()[k - nc]);
      }
    }
    return Part(std::move(pc), std::move(pf));
  };
  Candidates<Part> out;
  if (m < 63 && (std::uint64_t{1} << m) <= lim.exhaustive_limit) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      out.items.push_back(from_mask(mask));
    }
    return out;
  }
  std::set<Part> items{Part{}, atoms, Part(atoms.cells(), {}), Part({}, atoms.faces())};
  for (CellId c : atoms.cells()) items.insert(Part({c}, {}));
  for (FaceId f : atoms.faces()) items.insert(Part({}, {f}));
  SplitMix64 rng(lim.seed ^ m);
  for (std::size_t s = 0; s < lim.sample_size; ++s) {
    std::vector<CellId> pc;
    std::vector<FaceId> pf;
    for (CellId c : atoms.cells()) {
      if (rng.next() & 1U) pc.push_back(c);
    }
    for (FaceId f : atoms.faces()) {
      if (rng.next() & 1U) pf.push_back(f);
    }
    items.insert(Part(std::move(pc), std::move(pf)));
  }
  return finish(std::move(items), pow2(m));
}

Candidates<std::pair<Region, Region>> enumerate_nested_pairs(const Region& space,
                                                             const EnumerationLimits& lim) {
  const std::size_t n = space.size();
  const double total = std::pow(3.0, static_cast<double>(n));
  Candidates<std::pair<Region, Region>> out;
  if (total <= static_cast<double>(lim.exhaustive_limit) * 8.0) {
    const auto count = static_cast<std::uint64_t>(total);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<CellId> a, b;
      std::uint64_t c = code;
      for (std::size_t k = 0; k < n; ++k, c /= 3) {
        // 0: outside B, 1: in B only, 2: in A (hence in B).
        if (c % 3 >= 1) b.push_back(space.cells()[k]);
        if (c % 3 == 2) a.push_back(space.cells()[k]);
      }
      out.items.emplace_back(Region(std::move(a)), Region(std::move(b)));
    }
    return out;
  }
  std::set<std::pair<Region, Region>> items{{Region{}, Region{}}, {Region{}, space}, {space, space}};
  SplitMix64 rng(lim.seed ^ 0x7e1ULL);
  for (std::size_t s = 0; s < lim.sample_size; ++s) {
    std::vector<CellId> a, b;
    for (CellId c : space.cells()) {
      const auto r = rng.below(3);
      if (r >= 1) b.push_back(c);
      if (r == 2) a.push_back(c);
    }
    items.emplace(Region(std::move(a)), Region(std::move(b)));
  }
  return finish(std::move(items), total);
}

}  // namespace gwt
