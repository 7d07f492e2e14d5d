// Copyright 2026 The Wallguard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wallguard/policy.hpp"

namespace wallguard {

// Fixed-width bit vector; bit 1 is the leftmost printed character and maps
// to the role class with index 1. Bits may only flip 0 -> 1.
class bit_vector {
public:
    bit_vector() = default;
    explicit bit_vector(std::size_t width) : bits_(width, false) {}

    static bit_vector parse(const std::string& text);  // e.g. "100"

    std::size_t width() const { return bits_.size(); }
    bool test(int index) const;  // 1-based class index
    void set(int index);
    bool none() const;

    bool intersects(const bit_vector& other) const;
    void merge(const bit_vector& other);  // bitwise OR

    std::string to_string() const;

    friend bool operator==(const bit_vector& a, const bit_vector& b) = default;

private:
    std::vector<bool> bits_;
};

struct binary_object_wall {
    object_id object;
    bit_vector authorized;   // classes with access rights to the object
    bit_vector conflicting;  // classes denied access to the object
};

struct binary_subject_wall {
    user_id subject;
    bit_vector granted;
    bit_vector denied;
};

binary_object_wall init_object_wall(const policy& p, const object_id& obj);
binary_subject_wall init_subject_wall(const policy& p, const user_id& uid);

// True iff granted AND conflicting is all-zero and denied AND authorized is
// all-zero. Pure; never mutates either wall.
bool check_access(const binary_subject_wall& sw, const binary_object_wall& ow);

// Read grants merge the object's sides into the subject wall.
binary_subject_wall update_on_read(binary_subject_wall sw, const binary_object_wall& ow);

// Write grants merge the subject's sides into the object wall.
binary_object_wall update_on_write(binary_object_wall ow, const binary_subject_wall& sw);

// "{100, 011}"
std::string render_wall_pair(const bit_vector& left, const bit_vector& right);

}  // namespace wallguard
