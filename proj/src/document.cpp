// Copyright 2026 The Phraselette Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phraselette/document.hpp"

#include <algorithm>

#include "phraselette/error.hpp"
#include "phraselette/rephrasing.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

Document::Document(std::string id, std::string text)
    : id_(std::move(id)), text_(std::move(text)), length_(text::codepoint_length(text_)) {}

const Inlet& Document::create_inlet(CharRange range, std::set<std::string> active_well_ids) {
  if (range.empty()) throw Error(ErrorCode::kEmptyRange, "inlet range is empty");
  if (range.end > length_) {
    throw Error(ErrorCode::kOutOfBounds, "inlet range [" + std::to_string(range.start) + ", " +
                                             std::to_string(range.end) + ") exceeds text length " +
                                             std::to_string(length_));
  }
  for (const Inlet& existing : inlets_) {
    if (existing.range.overlaps(range)) {
      throw Error(ErrorCode::kOverlappingInlet, "range overlaps inlet " + existing.id);
    }
  }
  Inlet inlet;
  inlet.id = (id_.empty() ? "i" : id_ + "-i") + std::to_string(next_inlet_seq_++);
  inlet.range = range;
  inlet.active_well_ids = std::move(active_well_ids);
  auto pos = std::ranges::upper_bound(inlets_, range.start, {},
                                      [](const Inlet& i) { return i.range.start; });
  pos = inlets_.insert(pos, std::move(inlet));
  ++revision_;
  return *pos;
}

void Document::remove_inlet(const std::string& inlet_id) {
  auto it = std::ranges::find(inlets_, inlet_id, &Inlet::id);
  if (it == inlets_.end()) throw Error(ErrorCode::kUnknownInlet, "unknown inlet " + inlet_id);
  inlets_.erase(it);
  ++revision_;
}

void Document::accept_rephrasing(const std::string& inlet_id, const Rephrasing& r) {
  Inlet& target = mutable_inlet(inlet_id);
  if (r.generation != target.generation) {
    throw Error(ErrorCode::kStaleGeneration,
                "rephrasing generation " + std::to_string(r.generation) +
                    " does not match inlet generation " + std::to_string(target.generation));
  }
  if (r.text.empty()) throw Error(ErrorCode::kInvalidArgument, "rephrasing text is empty");
  const std::size_t new_len = text::codepoint_length(r.text);
  const std::size_t b0 = text::byte_offset(text_, target.range.start);
  const std::size_t b1 = text::byte_offset(text_, target.range.end);
  text_.replace(b0, b1 - b0, r.text);

  const std::size_t old_end = target.range.end;
  const auto delta = static_cast<std::ptrdiff_t>(new_len) -
                     static_cast<std::ptrdiff_t>(target.range.length());
  target.range.end = target.range.start + new_len;
  ++target.generation;
  for (Inlet& other : inlets_) {
    if (&other != &target && other.range.start >= old_end) {
      other.range.start = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(other.range.start) + delta);
      other.range.end = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(other.range.end) + delta);
    }
  }
  length_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(length_) + delta);
  ++revision_;
}

ContextSlice Document::slice_context(const std::string& inlet_id) const {
  const Inlet& target = inlet(inlet_id);
  const std::size_t b0 = text::byte_offset(text_, target.range.start);
  const std::size_t b1 = text::byte_offset(text_, target.range.end);
  return {text_.substr(0, b0), text_.substr(b0, b1 - b0), text_.substr(b1)};
}

std::string Document::selection(const std::string& inlet_id) const {
  return slice_context(inlet_id).selection;
}

std::int64_t Document::begin_run(const std::string& inlet_id) {
  Inlet& target = mutable_inlet(inlet_id);
  ++revision_;
  return ++target.generation;
}

void Document::set_active_wells(const std::string& inlet_id, std::set<std::string> well_ids) {
  mutable_inlet(inlet_id).active_well_ids = std::move(well_ids);
  ++revision_;
}

void Document::activate_well(const std::string& well_id) {
  for (Inlet& i : inlets_) i.active_well_ids.insert(well_id);
  ++revision_;
}

void Document::deactivate_well(const std::string& well_id) {
  for (Inlet& i : inlets_) i.active_well_ids.erase(well_id);
  ++revision_;
}

const Inlet& Document::inlet(const std::string& inlet_id) const {
  const Inlet* found = find_inlet(inlet_id);
  if (found == nullptr) throw Error(ErrorCode::kUnknownInlet, "unknown inlet " + inlet_id);
  return *found;
}

const Inlet* Document::find_inlet(const std::string& inlet_id) const {
  auto it = std::ranges::find(inlets_, inlet_id, &Inlet::id);
  return it == inlets_.end() ? nullptr : &*it;
}

Inlet& Document::mutable_inlet(const std::string& inlet_id) {
  auto it = std::ranges::find(inlets_, inlet_id, &Inlet::id);
  if (it == inlets_.end()) throw Error(ErrorCode::kUnknownInlet, "unknown inlet " + inlet_id);
  return *it;
}

Document Document::restore(std::string id, std::string text, std::vector<Inlet> inlets,
                           std::int64_t revision, std::int64_t next_inlet_seq) {
  Document doc(std::move(id), std::move(text));
  doc.inlets_ = std::move(inlets);
  std::ranges::sort(doc.inlets_, {}, [](const Inlet& i) { return i.range.start; });
  doc.revision_ = revision;
  doc.next_inlet_seq_ = std::max<std::int64_t>(next_inlet_seq, 1);
  doc.check_invariants();
  return doc;
}

void Document::check_invariants() const {
  for (std::size_t k = 0; k < inlets_.size(); ++k) {
    const CharRange& r = inlets_[k].range;
    if (r.empty()) throw Error(ErrorCode::kEmptyRange, "inlet " + inlets_[k].id + " is empty");
    if (r.end > length_) throw Error(ErrorCode::kOutOfBounds, "inlet " + inlets_[k].id + " out of bounds");
    if (k > 0 && inlets_[k - 1].range.overlaps(r)) {
      throw Error(ErrorCode::kOverlappingInlet, "inlet " + inlets_[k].id + " overlaps its neighbour");
    }
  }
}

}  // namespace phraselette
