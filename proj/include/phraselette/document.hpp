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

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace phraselette {

struct Rephrasing;

// Half-open interval of Unicode scalar-value offsets.
struct CharRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end > start ? end - start : 0; }
  bool empty() const { return end <= start; }
  bool overlaps(const CharRange& other) const {
    return start < other.end && other.start < end;
  }

  friend bool operator==(const CharRange&, const CharRange&) = default;
};

// A highlighted revision site. `generation` bumps on every run and every
// accepted rephrasing so in-flight suggestions can be recognised as stale.
struct Inlet {
  std::string id;
  CharRange range;
  std::set<std::string> active_well_ids;
  std::int64_t generation = 0;

  friend bool operator==(const Inlet&, const Inlet&) = default;
};

struct ContextSlice {
  std::string before;
  std::string selection;
  std::string after;

  friend bool operator==(const ContextSlice&, const ContextSlice&) = default;
};

// Working text plus its inlets. Inlets are kept sorted by start offset, are
// pairwise disjoint and lie inside the text. Every mutation bumps revision.
class Document {
 public:
  Document() = default;
  Document(std::string id, std::string text);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::vector<Inlet>& inlets() const { return inlets_; }
  std::int64_t revision() const { return revision_; }
  std::size_t length() const { return length_; }

  // Throws EmptyRange, OutOfBounds or OverlappingInlet.
  const Inlet& create_inlet(CharRange range, std::set<std::string> active_well_ids = {});

  void remove_inlet(const std::string& inlet_id);

  // Replaces the inlet's span with r.text. Throws UnknownInlet, or
  // StaleGeneration when r was produced for an older generation.
  void accept_rephrasing(const std::string& inlet_id, const Rephrasing& r);

  ContextSlice slice_context(const std::string& inlet_id) const;
  std::string selection(const std::string& inlet_id) const;

  // Starts a new run on the inlet and returns its generation.
  std::int64_t begin_run(const std::string& inlet_id);

  void set_active_wells(const std::string& inlet_id, std::set<std::string> well_ids);
  void activate_well(const std::string& well_id);
  void deactivate_well(const std::string& well_id);

  // Bumps the revision for edits held outside the document (well configs).
  void touch() { ++revision_; }

  const Inlet& inlet(const std::string& inlet_id) const;
  const Inlet* find_inlet(const std::string& inlet_id) const;

  // Restores a document from its serialized fields, validating invariants.
  static Document restore(std::string id, std::string text, std::vector<Inlet> inlets,
                          std::int64_t revision, std::int64_t next_inlet_seq);
  std::int64_t next_inlet_seq() const { return next_inlet_seq_; }

  friend bool operator==(const Document&, const Document&) = default;

 private:
  Inlet& mutable_inlet(const std::string& inlet_id);
  void check_invariants() const;

  std::string id_;
  std::string text_;
  std::size_t length_ = 0;
  std::vector<Inlet> inlets_;
  std::int64_t revision_ = 0;
  std::int64_t next_inlet_seq_ = 1;
};

}  // namespace phraselette
