#include "nilbm/step_function.hpp"

namespace nilbm {

StepFunction StepFunction::make(int dim, std::vector<Piece> pieces) {
  StepFunction out;
  out.dim_ = dim;
  for (Piece& p : pieces) {
    if (static_cast<int>(p.box.size()) != dim)
      throw std::invalid_argument("step function piece has wrong dimension");
    for (const Interval& iv : p.box)
      if (!iv.valid()) throw std::invalid_argument("step function piece with lo > hi");
    if (p.value < 0) throw std::invalid_argument("step function value must be nonnegative");
    if (p.value == 0 || box_is_degenerate(p.box)) continue;
    out.pieces_.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < out.pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < out.pieces_.size(); ++j) {
      bool open_overlap = true;
      for (int c = 0; c < dim; ++c) {
        if (std::max(out.pieces_[i].box[c].lo, out.pieces_[j].box[c].lo) >=
            std::min(out.pieces_[i].box[c].hi, out.pieces_[j].box[c].hi)) {
          open_overlap = false;
          break;
        }
      }
      if (open_overlap)
        throw OverlappingPiecesError("step function pieces " + std::to_string(i) + " and " +
                                     std::to_string(j) + " overlap");
    }
  return out;
}

Rat StepFunction::integral() const {
  Rat acc(0);
  for (const Piece& p : pieces_) acc += p.value * box_volume(p.box);
  return acc;
}

BoxUnion StepFunction::support() const {
  std::vector<Box> boxes;
  boxes.reserve(pieces_.size());
  for (const Piece& p : pieces_) boxes.push_back(p.box);
  return BoxUnion::normalized(dim_, std::move(boxes));
}

}  // namespace nilbm
