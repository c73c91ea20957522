#include "radproj/point_set.hpp"

#include <algorithm>
#include <cmath>

namespace radproj {

void Provenance::set(const std::string& key, const std::string& value) {
  for (auto& kv : params)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  params.emplace_back(key, value);
}

const std::string* Provenance::get(const std::string& key) const {
  for (const auto& kv : params)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

PointSet PointSet::make_exact(const CycloTag& t) {
  PointSet ps;
  ps.kind = PointKind::Exact;
  ps.tag = &t;
  return ps;
}

PointSet PointSet::make_lattice() {
  PointSet ps;
  ps.kind = PointKind::Lattice;
  return ps;
}

PointSet PointSet::make_float() { return PointSet{}; }

std::size_t PointSet::size() const noexcept {
  switch (kind) {
  case PointKind::Exact:
    return exact.size();
  case PointKind::Lattice:
    return lattice.size();
  case PointKind::Float:
    return floating.size();
  }
  return 0;
}

PlanarPoint PointSet::planar(std::size_t i) const noexcept {
  switch (kind) {
  case PointKind::Exact:
    return embed_direct(exact[i]);
  case PointKind::Lattice:
    return {static_cast<double>(lattice[i].a), static_cast<double>(lattice[i].b)};
  case PointKind::Float:
    break;
  }
  return floating[i];
}

PointSet PointSet::empty_like() const {
  PointSet ps;
  ps.kind = kind;
  ps.tag = tag;
  ps.provenance = provenance;
  ps.reference_point = reference_point;
  return ps;
}

PointSet PointSet::filtered(const std::vector<char>& mask) const {
  PointSet out = empty_like();
  auto keep = [&](const auto& src, auto& dst) {
    for (std::size_t i = 0; i < src.size(); ++i)
      if (mask[i]) dst.push_back(src[i]);
  };
  keep(exact, out.exact);
  keep(lattice, out.lattice);
  keep(floating, out.floating);
  return out;
}

std::optional<std::size_t> PointSet::reference_index() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const PlanarPoint p = planar(i);
    if (std::abs(p.x - reference_point.x) <= 1e-9 && std::abs(p.y - reference_point.y) <= 1e-9)
      return i;
  }
  return std::nullopt;
}

void PointSet::canonical_sort() {
  std::sort(exact.begin(), exact.end(), coefficient_less);
  std::sort(lattice.begin(), lattice.end());
  std::sort(floating.begin(), floating.end(), [](const PlanarPoint& p, const PlanarPoint& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
}

const char* kind_name(PointKind k) noexcept {
  switch (k) {
  case PointKind::Exact:
    return "exact";
  case PointKind::Lattice:
    return "lattice";
  case PointKind::Float:
    break;
  }
  return "float";
}

} // namespace radproj
