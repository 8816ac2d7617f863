#pragma once

// Edit scripts between successive partial outputs, and delayed views of a
// trace. Outputs are positionally aligned: label i always refers to token i.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "increval/types.hpp"

namespace increval {

enum class EditKind { kAddition, kSubstitution, kRevocation };

std::string_view to_string(EditKind kind);

struct Edit {
  EditKind kind = EditKind::kAddition;
  std::size_t position = 1;  // 1-based; always 1 for classification
  std::optional<Label> old_label;
  std::optional<Label> new_label;

  static Edit addition(std::size_t position, Label label);
  static Edit substitution(std::size_t position, Label from, Label to);

  friend bool operator==(const Edit&, const Edit&) = default;
};

std::string to_string(const Edit& edit);

struct EditScript {
  std::size_t step = 0;
  std::vector<Edit> edits;

  std::size_t count(EditKind kind) const;
  friend bool operator==(const EditScript&, const EditScript&) = default;
};

// What a consumer sees when the processor withholds each label until
// `delay` further tokens have been read. emissions[t-1] is the output
// released at step t; the final step always releases the full output.
struct DelayedView {
  TaskKind task = TaskKind::kTagging;
  Delay delay;
  std::vector<StepOutput> emissions;

  const StepOutput& final_output() const { return emissions.back(); }
};

// Throws Error(kInvalidTrace) when the trace is malformed.
DelayedView apply_delay(const IncrementalTrace& trace, Delay delay);

// One script per step whose emission differs from the previous one. Throws
// Error(kNonMonotoneEmission) when an emission shrinks.
std::vector<EditScript> edit_scripts(const DelayedView& view);

// Positional diff of two consecutive emissions.
std::vector<Edit> diff_outputs(const StepOutput& before, const StepOutput& after,
                               std::size_t step);

// Replays scripts on top of an empty output.
StepOutput replay(const std::vector<EditScript>& scripts);

struct EditCounts {
  std::size_t additions = 0;
  std::size_t substitutions = 0;
  std::size_t revocations = 0;
};

EditCounts count_edits(const std::vector<EditScript>& scripts);

}  // namespace increval
