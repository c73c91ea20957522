#include "radproj/substitution.hpp"

#include "radproj/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#ifndef RADPROJ_RULE_DIR
#define RADPROJ_RULE_DIR "data/rules"
#endif

namespace radproj {

Affine Affine::inverse() const {
  const double D = det();
  if (D == 0.0) throw UsageError("singular affine map");
  Affine r;
  r.a = d / D;
  r.b = -b / D;
  r.c = -c / D;
  r.d = a / D;
  r.e = -(r.a * e + r.b * f);
  r.f = -(r.c * e + r.d * f);
  return r;
}

Affine Affine::similarity(double scale, double angle) {
  const double cs = scale * std::cos(angle);
  const double sn = scale * std::sin(angle);
  return {cs, -sn, sn, cs, 0.0, 0.0};
}

Affine operator*(const Affine& f, const Affine& g) noexcept {
  return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c,
          f.c * g.b + f.d * g.d, f.a * g.e + f.b * g.f + f.e, f.c * g.e + f.d * g.f + f.f};
}

double Prototile::area() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % vertices.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(s);
}

int SubstitutionRule::prototile_index(const std::string& n) const {
  for (std::size_t i = 0; i < prototiles.size(); ++i)
    if (prototiles[i].name == n) return static_cast<int>(i);
  return -1;
}

Eigen::MatrixXd SubstitutionRule::count_matrix() const {
  const auto k = static_cast<Eigen::Index>(prototiles.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (const auto& child : productions[static_cast<std::size_t>(j)]) m(child.proto, j) += 1.0;
  return m;
}

double SubstitutionRule::dominant_eigenvalue() const {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(count_matrix(), false);
  double best = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    best = std::max(best, std::abs(es.eigenvalues()(i)));
  return best;
}

std::vector<std::string> SubstitutionRule::validation_problems(double tol) const {
  std::vector<std::string> problems;
  if (prototiles.empty()) problems.push_back("no prototiles defined");
  if (!(multiplier > 1.0)) problems.push_back("multiplier must exceed 1");
  if (productions.size() != prototiles.size()) problems.push_back("production table size mismatch");
  if (!problems.empty()) return problems;
  const double l2 = multiplier * multiplier;
  for (std::size_t j = 0; j < prototiles.size(); ++j) {
    if (prototiles[j].vertices.size() < 3)
      problems.push_back("prototile " + prototiles[j].name + " has fewer than 3 vertices");
    if (productions[j].empty()) {
      problems.push_back("prototile " + prototiles[j].name + " has no production");
      continue;
    }
    double child_area = 0.0;
    for (const auto& c : productions[j])
      child_area += std::abs(c.map.det()) * prototiles[static_cast<std::size_t>(c.proto)].area();
    const double want = l2 * prototiles[j].area();
    if (std::abs(child_area - want) > tol * want) {
      std::ostringstream os;
      os.precision(12);
      os << "production " << prototiles[j].name << " violates the area identity: children cover "
         << child_area << ", inflated parent has " << want;
      problems.push_back(os.str());
    }
  }
  const double ev = dominant_eigenvalue();
  if (std::abs(ev - l2) > 1e-9 * l2) {
    std::ostringstream os;
    os.precision(12);
    os << "dominant eigenvalue " << ev << " of the count matrix differs from multiplier^2 = " << l2;
    problems.push_back(os.str());
  }
  return problems;
}

void SubstitutionRule::validate(double tol) const {
  const auto problems = validation_problems(tol);
  if (problems.empty()) return;
  std::string msg = "invalid substitution rule '" + name + "':";
  for (const auto& p : problems) msg += "\n  " + p;
  throw UsageError(msg);
}

namespace {

struct ParseError {
  std::string source;
  int line;
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError(source + ":" + std::to_string(line) + ": " + what);
  }
};

double to_double(const std::string& s, const ParseError& at) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) at.fail("malformed number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    at.fail("malformed number '" + s + "'");
  }
}

Affine parse_affine(const std::vector<std::string>& tok, std::size_t first, const ParseError& at) {
  if (tok.size() != first + 6) at.fail("expected 6 affine coefficients");
  Affine m;
  double* dst[] = {&m.a, &m.b, &m.c, &m.d, &m.e, &m.f};
  for (int i = 0; i < 6; ++i) *dst[i] = to_double(tok[first + static_cast<std::size_t>(i)], at);
  return m;
}

} // namespace

SubstitutionRule SubstitutionRule::parse(std::istream& in, const std::string& source) {
  SubstitutionRule rule;
  enum class Block { None, Prototile, Production, Seed } block = Block::None;
  int current = -1;
  // Productions and seeds may reference prototiles declared later.
  struct Pending {
    int parent; // -1 for seed
    std::string child;
    Affine map;
    ParseError at;
  };
  std::vector<Pending> pending;
  std::vector<std::string> production_names;

  std::string line;
  ParseError at{source, 0};
  while (std::getline(in, line)) {
    ++at.line;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (kw == "end") {
      if (block == Block::None) at.fail("'end' outside a block");
      block = Block::None;
      continue;
    }
    switch (block) {
    case Block::Prototile:
      if (kw != "vertex" || tok.size() != 3) at.fail("expected 'vertex x y'");
      rule.prototiles[static_cast<std::size_t>(current)].vertices.push_back(
          {to_double(tok[1], at), to_double(tok[2], at)});
      continue;
    case Block::Production:
      if (kw != "child" || tok.size() < 2) at.fail("expected 'child NAME a b c d e f'");
      pending.push_back({current, tok[1], parse_affine(tok, 2, at), at});
      continue;
    case Block::Seed:
      if (kw != "tile" || tok.size() < 2) at.fail("expected 'tile NAME a b c d e f'");
      pending.push_back({-1, tok[1], parse_affine(tok, 2, at), at});
      continue;
    case Block::None:
      break;
    }
    if (kw == "name" && tok.size() == 2) {
      rule.name = tok[1];
    } else if (kw == "multiplier" && tok.size() == 2) {
      rule.multiplier = to_double(tok[1], at);
    } else if (kw == "rotation" && tok.size() == 2) {
      rule.rotation = to_double(tok[1], at);
    } else if (kw == "prototile" && tok.size() == 2) {
      if (rule.prototile_index(tok[1]) >= 0) at.fail("duplicate prototile '" + tok[1] + "'");
      rule.prototiles.push_back({tok[1], {}});
      current = static_cast<int>(rule.prototiles.size()) - 1;
      block = Block::Prototile;
    } else if (kw == "production" && tok.size() == 2) {
      production_names.push_back(tok[1]);
      current = static_cast<int>(production_names.size()) - 1;
      block = Block::Production;
    } else if (kw == "seed" && tok.size() == 1) {
      block = Block::Seed;
    } else {
      at.fail("unrecognised line '" + line + "'");
    }
  }
  if (block != Block::None) at.fail("unterminated block at end of file");

  rule.productions.assign(rule.prototiles.size(), {});
  std::vector<int> parent_of(production_names.size());
  for (std::size_t i = 0; i < production_names.size(); ++i) {
    parent_of[i] = rule.prototile_index(production_names[i]);
    if (parent_of[i] < 0) throw UsageError(source + ": production for unknown prototile '" + production_names[i] + "'");
  }
  for (const auto& p : pending) {
    const int child = rule.prototile_index(p.child);
    if (child < 0) p.at.fail("unknown prototile '" + p.child + "'");
    if (p.parent < 0)
      rule.seed.push_back({child, p.map});
    else
      rule.productions[static_cast<std::size_t>(parent_of[static_cast<std::size_t>(p.parent)])].push_back({child, p.map});
  }
  if (rule.seed.empty()) throw UsageError(source + ": rule has no seed tiles");
  return rule;
}

SubstitutionRule SubstitutionRule::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open rule file '" + path + "'");
  return parse(in, path);
}

std::string resolve_rule_path(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) return name_or_path;
  for (const fs::path& dir : {fs::path(RADPROJ_RULE_DIR), fs::path("data/rules")}) {
    const fs::path p = dir / (name_or_path + ".rule");
    if (fs::exists(p)) return p.string();
  }
  throw UsageError("rule '" + name_or_path + "' not found (shipped rules: lancon_billard, chair)");
}

namespace {

std::vector<PlacedTile> inflate_impl(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles,
                                     bool parallel) {
  const Affine L = rule.inflation();
  const Affine Linv = L.inverse();
  const auto n = static_cast<std::int64_t>(tiles.size());
  std::vector<std::size_t> offset(tiles.size() + 1, 0);
  for (std::size_t i = 0; i < tiles.size(); ++i)
    offset[i + 1] = offset[i] + rule.productions[static_cast<std::size_t>(tiles[i].proto)].size();
  std::vector<PlacedTile> out(offset.back());
  auto expand = [&](std::int64_t i) {
    const auto& t = tiles[static_cast<std::size_t>(i)];
    const Affine frame = L * t.map * Linv;
    std::size_t o = offset[static_cast<std::size_t>(i)];
    for (const auto& c : rule.productions[static_cast<std::size_t>(t.proto)])
      out[o++] = {c.proto, frame * c.map};
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) expand(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) expand(i);
  }
  return out;
}

// Vertex instances of all tiles, in tile order.
std::vector<PlanarPoint> vertex_instances(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles,
                                          std::vector<std::size_t>& first) {
  first.assign(tiles.size() + 1, 0);
  for (std::size_t i = 0; i < tiles.size(); ++i)
    first[i + 1] = first[i] + rule.prototiles[static_cast<std::size_t>(tiles[i].proto)].vertices.size();
  std::vector<PlanarPoint> pts(first.back());
  const auto n = static_cast<std::int64_t>(tiles.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& t = tiles[static_cast<std::size_t>(i)];
    std::size_t o = first[static_cast<std::size_t>(i)];
    for (const auto& v : rule.prototiles[static_cast<std::size_t>(t.proto)].vertices) pts[o++] = t.map(v);
  }
  return pts;
}

// Merges points closer than tol. Returns the representatives in (x, y)
// order and, per input point, the index of its representative.
std::vector<PlanarPoint> dedup(const std::vector<PlanarPoint>& pts, double tol, std::vector<std::uint32_t>& id) {
  std::vector<std::uint32_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
    return pts[i].x < pts[j].x || (pts[i].x == pts[j].x && pts[i].y < pts[j].y);
  });
  constexpr std::uint32_t kUnset = UINT32_MAX;
  id.assign(pts.size(), kUnset);
  std::vector<PlanarPoint> reps;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::uint32_t i = order[k];
    if (id[i] != kUnset) continue;
    const auto r = static_cast<std::uint32_t>(reps.size());
    reps.push_back(pts[i]);
    id[i] = r;
    for (std::size_t m = k + 1; m < order.size() && pts[order[m]].x - pts[i].x <= tol; ++m) {
      const std::uint32_t j = order[m];
      if (id[j] == kUnset && std::abs(pts[j].y - pts[i].y) <= tol) id[j] = r;
    }
  }
  return reps;
}

bool point_in_polygon(PlanarPoint p, const PlanarPoint* v, std::size_t n) {
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double segment_distance(PlanarPoint p, PlanarPoint q) {
  const PlanarPoint d = q - p;
  const double len2 = d.x * d.x + d.y * d.y;
  double t = len2 > 0.0 ? -(p.x * d.x + p.y * d.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x + t * d.x, p.y + t * d.y);
}

double covered_radius_impl(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles,
                           const std::vector<PlanarPoint>& pts, const std::vector<std::size_t>& first,
                           const std::vector<std::uint32_t>& id) {
  // Edges seen from two tiles with identical endpoints are interior.
  struct Edge {
    std::uint64_t key;
    std::uint32_t tile;
    std::uint32_t local;
  };
  std::vector<Edge> edges;
  edges.reserve(pts.size());
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    const std::size_t n = first[t + 1] - first[t];
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t u = id[first[t] + k];
      const std::uint64_t v = id[first[t] + (k + 1) % n];
      edges.push_back({std::min(u, v) << 32 | std::max(u, v), static_cast<std::uint32_t>(t),
                       static_cast<std::uint32_t>(k)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.key < b.key; });
  std::vector<const Edge*> unmatched;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j].key == edges[i].key) ++j;
    if (j - i == 1) unmatched.push_back(&edges[i]);
    i = j;
  }

  // Uniform grid over tile bounding boxes for the probe tests.
  double cell = 0.0;
  for (const auto& p : rule.prototiles)
    for (const auto& v : p.vertices) cell = std::max(cell, std::hypot(v.x, v.y));
  cell = std::max(2.0 * cell, 1e-3);
  auto key_of = [&](double x, double y) {
    const auto cx = static_cast<std::int64_t>(std::floor(x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(y / cell));
    return static_cast<std::uint64_t>(cx) * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(cy);
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  bool grid_built = false;
  auto build_grid = [&] {
    for (std::size_t t = 0; t < tiles.size(); ++t) {
      double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
      for (std::size_t k = first[t]; k < first[t + 1]; ++k) {
        x0 = std::min(x0, pts[k].x);
        x1 = std::max(x1, pts[k].x);
        y0 = std::min(y0, pts[k].y);
        y1 = std::max(y1, pts[k].y);
      }
      for (auto cx = std::floor(x0 / cell); cx <= std::floor(x1 / cell); cx += 1.0)
        for (auto cy = std::floor(y0 / cell); cy <= std::floor(y1 / cell); cy += 1.0)
          grid[key_of(cx * cell + 0.5 * cell, cy * cell + 0.5 * cell)].push_back(static_cast<std::uint32_t>(t));
    }
    grid_built = true;
  };
  auto covered = [&](PlanarPoint p) {
    const auto it = grid.find(key_of(p.x, p.y));
    if (it == grid.end()) return false;
    for (std::uint32_t t : it->second)
      if (point_in_polygon(p, &pts[first[t]], first[t + 1] - first[t])) return true;
    return false;
  };

  double best = INFINITY;
  for (const Edge* e : unmatched) {
    const std::size_t n = first[e->tile + 1] - first[e->tile];
    const PlanarPoint p = pts[first[e->tile] + e->local];
    const PlanarPoint q = pts[first[e->tile] + (e->local + 1) % n];
    const double dist = segment_distance(p, q);
    if (dist >= best) continue;
    if (!grid_built) build_grid();
    // Outward side: opposite to the tile's interior.
    double orient = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = pts[first[e->tile] + k];
      const auto& b = pts[first[e->tile] + (k + 1) % n];
      orient += a.x * b.y - b.x * a.y;
    }
    const PlanarPoint d = q - p;
    const double len = std::hypot(d.x, d.y);
    PlanarPoint out{d.y / len, -d.x / len}; // right-hand normal: outward for counter-clockwise tiles
    if (orient < 0) out = -1.0 * out;
    bool boundary = false;
    for (double f : {0.25, 0.5, 0.75}) {
      const PlanarPoint probe = p + f * d + (1e-6 * len) * out;
      if (!covered(probe)) {
        boundary = true;
        break;
      }
    }
    if (boundary) best = dist;
  }
  return best;
}

} // namespace

std::vector<PlacedTile> inflate(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles) {
  return inflate_impl(rule, tiles, true);
}

namespace serial {
std::vector<PlacedTile> inflate(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles) {
  return inflate_impl(rule, tiles, false);
}
} // namespace serial

std::vector<std::size_t> tile_counts(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles) {
  std::vector<std::size_t> c(rule.prototiles.size(), 0);
  for (const auto& t : tiles) ++c[static_cast<std::size_t>(t.proto)];
  return c;
}

double covered_radius(const SubstitutionRule& rule, const std::vector<PlacedTile>& tiles) {
  std::vector<std::size_t> first;
  const auto pts = vertex_instances(rule, tiles, first);
  std::vector<std::uint32_t> id;
  dedup(pts, kDedupTol, id);
  return covered_radius_impl(rule, tiles, pts, first, id);
}

PointSet gen_substitution(const SubstitutionRule& rule, int steps, double R, std::size_t max_points) {
  if (steps < 0) throw UsageError("inflation steps must be non-negative");
  rule.validate();
  std::vector<PlacedTile> tiles = rule.seed;
  for (int s = 0; s < steps; ++s) {
    double next = 0.0;
    for (const auto& t : tiles)
      next += static_cast<double>(rule.productions[static_cast<std::size_t>(t.proto)].size());
    if (next * 4.0 > static_cast<double>(max_points))
      throw ResourceError("gen_substitution: step " + std::to_string(s + 1) + " needs about " +
                          std::to_string(static_cast<long long>(next)) + " tiles, over the point budget " +
                          std::to_string(max_points));
    tiles = inflate(rule, tiles);
  }

  std::vector<std::size_t> first;
  const auto pts = vertex_instances(rule, tiles, first);
  std::vector<std::uint32_t> id;
  std::vector<PlanarPoint> verts = dedup(pts, kDedupTol, id);
  const double radius = R > 0.0 ? R : covered_radius_impl(rule, tiles, pts, first, id);
  if (!std::isfinite(radius)) throw IntegrityError("could not determine the covered radius of the patch");

  PointSet ps = PointSet::make_float();
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (const auto& v : verts)
    if (v.x * v.x + v.y * v.y <= r2) ps.floating.push_back(v);

  const bool integral = std::all_of(ps.floating.begin(), ps.floating.end(), [](const PlanarPoint& p) {
    return std::abs(p.x - std::round(p.x)) <= 1e-9 && std::abs(p.y - std::round(p.y)) <= 1e-9;
  });
  if (integral && !ps.floating.empty()) {
    PointSet lat = PointSet::make_lattice();
    lat.lattice.reserve(ps.floating.size());
    for (const auto& p : ps.floating)
      lat.lattice.push_back({static_cast<std::int64_t>(std::llround(p.x)), static_cast<std::int64_t>(std::llround(p.y))});
    ps = std::move(lat);
  }
  ps.canonical_sort();
  ps.provenance.generator = rule.name;
  ps.provenance.radius = radius;
  ps.provenance.set("steps", std::to_string(steps));
  ps.provenance.set("tiles", std::to_string(tiles.size()));
  ps.provenance.set("radius_mode", R > 0.0 ? "fixed" : "covered");
  return ps;
}

} // namespace radproj
