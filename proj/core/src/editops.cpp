#include "increval/editops.hpp"

#include <algorithm>

#include "increval/error.hpp"

namespace increval {

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::kAddition: return "add";
    case EditKind::kSubstitution: return "sub";
    case EditKind::kRevocation: return "revoke";
  }
  return "?";
}

Edit Edit::addition(std::size_t position, Label label) {
  return Edit{EditKind::kAddition, position, std::nullopt, std::move(label)};
}

Edit Edit::substitution(std::size_t position, Label from, Label to) {
  return Edit{EditKind::kSubstitution, position, std::move(from), std::move(to)};
}

std::string to_string(const Edit& edit) {
  const std::string pos = std::to_string(edit.position);
  switch (edit.kind) {
    case EditKind::kAddition: return "+" + pos + ":" + edit.new_label.value_or("");
    case EditKind::kSubstitution:
      return "~" + pos + ":" + edit.old_label.value_or("") + "->" +
             edit.new_label.value_or("");
    case EditKind::kRevocation: return "-" + pos + ":" + edit.old_label.value_or("");
  }
  return {};
}

std::size_t EditScript::count(EditKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      edits.begin(), edits.end(), [kind](const Edit& e) { return e.kind == kind; }));
}

DelayedView apply_delay(const IncrementalTrace& trace, Delay delay) {
  require_valid(trace);
  const std::size_t n = trace.size();
  const std::size_t d = delay.value;

  DelayedView view{trace.task, delay, {}};
  view.emissions.reserve(n);
  for (std::size_t t = 1; t <= n; ++t) {
    const StepOutput& step = trace.steps[t - 1];
    if (t == n || d == 0) {
      view.emissions.push_back(step);
      continue;
    }
    if (t <= d) {
      view.emissions.emplace_back();
    } else if (trace.task == TaskKind::kTagging) {
      view.emissions.emplace_back(step.begin(), step.begin() + (t - d));
    } else {
      view.emissions.push_back(step);
    }
  }
  return view;
}

std::vector<Edit> diff_outputs(const StepOutput& before, const StepOutput& after,
                               std::size_t step) {
  if (after.size() < before.size()) {
    throw Error(ErrorCode::kNonMonotoneEmission,
                "emission shrinks from " + std::to_string(before.size()) +
                    " to " + std::to_string(after.size()) + " labels",
                ErrorContext{step, std::nullopt, {}, {}});
  }
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (before[i] != after[i]) {
      edits.push_back(Edit::substitution(i + 1, before[i], after[i]));
    }
  }
  for (std::size_t i = before.size(); i < after.size(); ++i) {
    edits.push_back(Edit::addition(i + 1, after[i]));
  }
  return edits;
}

std::vector<EditScript> edit_scripts(const DelayedView& view) {
  std::vector<EditScript> scripts;
  const StepOutput empty;
  const StepOutput* previous = &empty;
  for (std::size_t i = 0; i < view.emissions.size(); ++i) {
    const StepOutput& current = view.emissions[i];
    if (view.task == TaskKind::kClassification && current.size() > 1) {
      throw Error(ErrorCode::kInvalidTrace,
                  "classification emission holds more than one label",
                  ErrorContext{i + 1, std::nullopt, {}, {}});
    }
    std::vector<Edit> edits = diff_outputs(*previous, current, i + 1);
    if (!edits.empty()) scripts.push_back({i + 1, std::move(edits)});
    previous = &current;
  }
  return scripts;
}

StepOutput replay(const std::vector<EditScript>& scripts) {
  StepOutput out;
  for (const auto& script : scripts) {
    for (const auto& edit : script.edits) {
      const std::size_t idx = edit.position - 1;
      switch (edit.kind) {
        case EditKind::kAddition:
          if (out.size() <= idx) out.resize(idx + 1);
          out[idx] = edit.new_label.value_or("");
          break;
        case EditKind::kSubstitution:
          out.at(idx) = edit.new_label.value_or("");
          break;
        case EditKind::kRevocation:
          out.resize(std::min(out.size(), idx));
          break;
      }
    }
  }
  return out;
}

EditCounts count_edits(const std::vector<EditScript>& scripts) {
  EditCounts counts;
  for (const auto& script : scripts) {
    counts.additions += script.count(EditKind::kAddition);
    counts.substitutions += script.count(EditKind::kSubstitution);
    counts.revocations += script.count(EditKind::kRevocation);
  }
  return counts;
}

}  // namespace increval
