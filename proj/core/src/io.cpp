#include "tsimp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "tsimp/delaunay.hpp"
#include "tsimp/error.hpp"

namespace tsimp {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens_.push_back({w, number});
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const {
    if (done()) fail("unexpected end of file");
    return tokens_[pos_];
  }
  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  std::size_t line() const { return done() ? (tokens_.empty() ? 0 : tokens_.back().line) : tokens_[pos_].line; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line()) + ": " + what);
  }

  Rational rational() {
    const std::size_t at = line();
    const std::string& text = next().text;
    try {
      return parse_rational(text);
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(at) + ": bad number '" + text + "'");
    }
  }

  std::size_t count() {
    const std::size_t at = line();
    const std::string& text = next().text;
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }) ||
        text.size() > 9)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(at) + ": bad count '" + text + "'");
    return std::stoul(text);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

PointCloud read_grid(std::istream& in) {
  Tokens tok(in);
  std::optional<std::size_t> ncols, nrows;
  std::optional<Rational> x0, y0, cell, nodata;
  while (!tok.done() && std::isalpha(static_cast<unsigned char>(tok.peek().text[0]))) {
    const std::string key = lower(tok.next().text);
    if (key == "ncols") {
      ncols = tok.count();
    } else if (key == "nrows") {
      nrows = tok.count();
    } else if (key == "xllcorner" || key == "xllcenter") {
      x0 = tok.rational();
    } else if (key == "yllcorner" || key == "yllcenter") {
      y0 = tok.rational();
    } else if (key == "cellsize") {
      cell = tok.rational();
    } else if (key == "nodata_value") {
      nodata = tok.rational();
    } else {
      tok.fail("unknown header key '" + key + "'");
    }
  }
  if (!ncols || !nrows || !x0 || !y0 || !cell) tok.fail("incomplete grid header");
  if (*ncols < 2 || *nrows < 2) tok.fail("grid needs at least 2 rows and 2 columns");
  if (*cell <= 0) tok.fail("cell size must be positive");
  const std::size_t nc = *ncols, nr = *nrows;
  PointCloud out;
  out.points.reserve(nc * nr);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t at = tok.line();
      Rational h = tok.rational();
      if (nodata && h == *nodata)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(at) + ": nodata cells are not supported");
      Rational x = *x0 + *cell * static_cast<long>(c);
      Rational y = *y0 + *cell * static_cast<long>(nr - 1 - r);
      x.canonicalize();
      y.canonicalize();
      out.points.push_back({x, y, h});
    }
  }
  if (!tok.done()) tok.fail("trailing data after the grid");
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * nc + c); };
  for (std::size_t r = 0; r + 1 < nr; ++r) {
    for (std::size_t c = 0; c + 1 < nc; ++c) {
      // row r is north of row r + 1
      const VertexId nw = id(r, c), ne = id(r, c + 1), sw = id(r + 1, c), se = id(r + 1, c + 1);
      out.triangles.push_back({sw, se, ne});
      out.triangles.push_back({sw, ne, nw});
    }
  }
  return out;
}

PointCloud read_mesh(std::istream& in) {
  Tokens tok(in);
  if (!tok.done() && lower(tok.peek().text) == "off") tok.next();
  const std::size_t counts_line = tok.line();
  const std::size_t nv = tok.count();
  const std::size_t nf = tok.count();
  if (!tok.done() && tok.peek().line == counts_line) tok.count();  // edge count, unused
  PointCloud out;
  out.points.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Rational x = tok.rational(), y = tok.rational(), h = tok.rational();
    out.points.push_back({x, y, h});
  }
  for (std::size_t i = 0; i < nf; ++i) {
    const std::size_t at = tok.line();
    if (tok.count() != 3) throw Error(ErrorCode::ParseError, "line " + std::to_string(at) + ": faces must be triangles");
    Triangle t{};
    for (auto& v : t) {
      const std::size_t k = tok.count();
      if (k >= nv) throw Error(ErrorCode::ParseError, "line " + std::to_string(at) + ": vertex index out of range");
      v = static_cast<VertexId>(k);
    }
    out.triangles.push_back(t);
  }
  if (!tok.done()) tok.fail("trailing data after the faces");
  return out;
}

PointCloud subsample(const PointCloud& cloud, const Subsample& how) {
  const std::size_t n = cloud.points.size();
  std::vector<Point2> pos;
  pos.reserve(n);
  for (const auto& p : cloud.points) pos.emplace_back(p.x, p.y);

  // convex-hull corners by the monotone chain
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
  std::vector<std::size_t> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t floor = hull.size();
    for (std::size_t i : order) {
      while (hull.size() >= floor + 2 && orientation(pos[hull[hull.size() - 2]], pos[hull.back()], pos[i]) <= 0)
        hull.pop_back();
      hull.push_back(i);
    }
    hull.pop_back();
    std::reverse(order.begin(), order.end());
  }
  std::vector<char> keep(n, 0);
  for (std::size_t i : hull) keep[i] = 1;

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!keep[i]) rest.push_back(i);
  std::mt19937_64 rng(how.seed);
  const std::size_t have = std::count(keep.begin(), keep.end(), 1);
  const std::size_t want = how.count > have ? std::min(how.count - have, rest.size()) : 0;
  for (std::size_t k = 0; k < want; ++k) {
    std::uniform_int_distribution<std::size_t> d(k, rest.size() - 1);
    std::swap(rest[k], rest[d(rng)]);
    keep[rest[k]] = 1;
  }

  PointCloud out;
  std::vector<Point2> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) {
      out.points.push_back(cloud.points[i]);
      kept.push_back(pos[i]);
    }
  out.triangles = delaunay_triangulation(kept);
  return out;
}

Terrain load(std::istream& in, FileFormat format, const std::optional<Subsample>& how) {
  PointCloud cloud = format == FileFormat::Grid ? read_grid(in) : read_mesh(in);
  if (how) cloud = subsample(cloud, *how);
  return Terrain::build(cloud.points, cloud.triangles);
}

Terrain load(const std::filesystem::path& path, FileFormat format, const std::optional<Subsample>& how) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return load(in, format, how);
}

void save_mesh(std::ostream& out, const Terrain& t) {
  const std::vector<TerrainPoint> pts = t.points();
  const std::vector<Triangle> tris = t.triangles();
  out << "OFF\n" << pts.size() << ' ' << tris.size() << " 0\n";
  for (const auto& p : pts) out << to_string(p.x) << ' ' << to_string(p.y) << ' ' << to_string(p.height) << '\n';
  for (const auto& f : tris) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void save(const Terrain& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  save_mesh(out, t);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace tsimp
