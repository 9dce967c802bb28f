#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "tsimp/terrain.hpp"

namespace tsimp {

/// Filtration value per cell, indexed by vertex, edge and face id (dead ids ignored).
struct SimplexwiseFunction {
  std::vector<Rational> vertex;
  std::vector<Rational> edge;
  std::vector<Rational> face;

  const Rational& value(int dim, std::int32_t id) const {
    return dim == 0 ? vertex[id] : dim == 1 ? edge[id] : face[id];
  }
};

struct CellRef {
  int dim = 0;
  std::int32_t id = kNone;

  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct PersistencePair {
  Rational birth;
  Rational death;

  Rational persistence() const { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
  std::array<std::vector<PersistencePair>, 2> pairs;  ///< finite pairs by birth dimension
  std::array<std::vector<Rational>, 2> essential;     ///< essential births by dimension

  std::size_t num_finite() const { return pairs[0].size() + pairs[1].size(); }
  std::size_t num_essential() const { return essential[0].size() + essential[1].size(); }
};

/// Pairing of a cell order, as positions into that order.
struct CellPairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (birth, death)
  std::vector<std::size_t> essential;
};

/// Max vertex height per cell.
SimplexwiseFunction canonical_filtration(const Terrain& t);

/// Live cells sorted by (value, dimension, id). Throws NonMonotoneFunction.
std::vector<CellRef> filtration_order(const Terrain& t, const SimplexwiseFunction& f);

/// Z/2 boundary matrix reduction over a face-before-coface order of all live cells.
CellPairing reduce(const Terrain& t, std::span<const CellRef> order);

PersistenceDiagram persistence(const Terrain& t, const SimplexwiseFunction& f);
PersistenceDiagram persistence(const Terrain& t);

/// Multiset equality ignoring zero-persistence pairs.
bool diagrams_equal(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// 2 * #(pairs with persistence > 2 epsilon) + #essential.
std::size_t min_critical_count(const PersistenceDiagram& d, const Rational& epsilon);

/// Columns dim,birth,death with "inf" for essential classes.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d);

}  // namespace tsimp
