#include "ct2/ct_element.hpp"

#include <stdexcept>

namespace ct2 {

PipelineMaps build_pipeline_maps() {
  using R = Rational;
  const Triangle2<R> ref{{{{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}}}};
  const R third = frac<R>(1, 3);
  const auto cubic_idx = enumerate_indices(3);
  const auto quintic_idx = enumerate_indices(5);

  PipelineMaps m;
  for (int i = 1; i <= 3; ++i) {
    const std::array<Bary3<R>, 3> corners{macro_vertex_in_inner<R>(i + 2), Bary3<R>(third, third, third),
                                          macro_vertex_in_inner<R>(i + 1)};
    Matrix<R> full(quintic_idx.size(), cubic_idx.size());
    for (std::size_t col = 0; col < cubic_idx.size(); ++col) {
      BBPatch<R> unit = BBPatch<R>::constant(3, ref, R(0));
      unit.mutable_coeffs()[col] = R(1);
      const auto q = raise_degree_twice(reparameterize(unit, corners));
      for (std::size_t row = 0; row < quintic_idx.size(); ++row)
        full(row, col) = q.coeffs()[row];
    }
    m.full[static_cast<std::size_t>(i - 1)] = std::move(full);
  }

  m.forward10 = Matrix<R>(10, 10);
  for (std::size_t r = 0; r < kForwardRows.size(); ++r) {
    const auto &[i, pos] = kForwardRows[r];
    const auto &full = m.full[static_cast<std::size_t>(i - 1)];
    for (std::size_t c = 0; c < 10; ++c)
      m.forward10(r, c) = full(canonical_position(pos), c);
  }
  auto inv = inverse(m.forward10);
  if (!inv)
    throw std::logic_error("build_pipeline_maps: forward map is singular");
  m.inverse10 = std::move(*inv);

  for (std::size_t k = 0; k < 3; ++k) {
    m.unknown[k] = Matrix<R>(kUnknownPositions.size(), 10);
    for (std::size_t r = 0; r < kUnknownPositions.size(); ++r)
      for (std::size_t c = 0; c < 10; ++c)
        m.unknown[k](r, c) = m.full[k](canonical_position(kUnknownPositions[r]), c);
  }
  return m;
}

const PipelineMaps &pipeline_maps() {
  static const PipelineMaps maps = build_pipeline_maps();
  return maps;
}

} // namespace ct2
