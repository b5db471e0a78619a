#pragma once

#include <cstdint>

#include "vbow/eval.hpp"
#include "vbow/types.hpp"

namespace vbow {

/// Block-structured multi-label BOW generator. Each class owns a disjoint
/// slice of the visual and textual vocabularies; images draw token counts
/// concentrated on their classes' slices, with the noise rates moving mass
/// to uniformly random words or tags.
struct SynthConfig {
  int n_images = 200;
  int n_classes = 5;
  int visual_vocab = 100;
  int textual_vocab = 50;
  double tag_noise_rate = 0.2;
  double visual_noise_rate = 0.3;
  std::uint64_t seed = 0;

  int visual_tokens_per_image = 100;
  int tags_per_image = 12;
  double second_class_prob = 0.3;

  void validate() const;
};

struct SynthDataset {
  BowMatrix visual;   // Y, counts
  BowMatrix textual;  // T, counts
  LabelMatrix labels;
};

SynthDataset synth_dataset(const SynthConfig& cfg);

}  // namespace vbow
