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

#include "wallguard/walls.hpp"

#include "wallguard/errors.hpp"

namespace wallguard {

bit_vector bit_vector::parse(const std::string& text)
{
    bit_vector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            v.bits_[i] = true;
        } else if (text[i] != '0') {
            throw parse_error(1, static_cast<int>(i + 1), "bit vector must be 0s and 1s");
        }
    }
    return v;
}

bool bit_vector::test(int index) const
{
    if (index < 1 || static_cast<std::size_t>(index) > bits_.size()) {
        throw width_mismatch("bit index " + std::to_string(index) + " out of range for width " +
                             std::to_string(bits_.size()));
    }
    return bits_[static_cast<std::size_t>(index - 1)];
}

void bit_vector::set(int index)
{
    if (index < 1 || static_cast<std::size_t>(index) > bits_.size()) {
        throw width_mismatch("bit index " + std::to_string(index) + " out of range for width " +
                             std::to_string(bits_.size()));
    }
    bits_[static_cast<std::size_t>(index - 1)] = true;
}

bool bit_vector::none() const
{
    for (bool b : bits_) {
        if (b) {
            return false;
        }
    }
    return true;
}

bool bit_vector::intersects(const bit_vector& other) const
{
    if (bits_.size() != other.bits_.size()) {
        throw width_mismatch("bit vector widths differ: " + std::to_string(bits_.size()) +
                             " vs " + std::to_string(other.bits_.size()));
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && other.bits_[i]) {
            return true;
        }
    }
    return false;
}

void bit_vector::merge(const bit_vector& other)
{
    if (bits_.size() != other.bits_.size()) {
        throw width_mismatch("bit vector widths differ: " + std::to_string(bits_.size()) +
                             " vs " + std::to_string(other.bits_.size()));
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (other.bits_[i]) {
            bits_[i] = true;
        }
    }
}

std::string bit_vector::to_string() const
{
    std::string out;
    out.reserve(bits_.size());
    for (bool b : bits_) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

std::string render_wall_pair(const bit_vector& left, const bit_vector& right)
{
    return "{" + left.to_string() + ", " + right.to_string() + "}";
}

binary_object_wall init_object_wall(const policy& p, const object_id& obj)
{
    auto it = p.objects.find(obj);
    if (it == p.objects.end()) {
        throw unknown_object(obj);
    }
    const std::size_t n = p.class_count();
    binary_object_wall wall{obj, bit_vector(n), bit_vector(n)};
    auto owner = p.role_classes.find(it->second.owning_class);
    if (owner == p.role_classes.end()) {
        throw unknown_object("object " + obj + " has unresolved owning class '" +
                             it->second.owning_class + "'");
    }
    wall.authorized.set(owner->second.index);
    for (const auto& cid : p.conflicting_classes(owner->first)) {
        wall.conflicting.set(p.role_classes.at(cid).index);
    }
    return wall;
}

binary_subject_wall init_subject_wall(const policy& p, const user_id& uid)
{
    auto it = p.users.find(uid);
    if (it == p.users.end()) {
        throw unknown_user(uid);
    }
    const std::size_t n = p.class_count();
    binary_subject_wall wall{uid, bit_vector(n), bit_vector(n)};
    auto cls = p.class_of_role(it->second.active_role);
    if (cls) {
        wall.granted.set(p.role_classes.at(*cls).index);
        for (const auto& cid : p.conflicting_classes(*cls)) {
            wall.denied.set(p.role_classes.at(cid).index);
        }
    } else {
        // Classless roles are denied every warehouse class.
        for (std::size_t i = 1; i <= n; ++i) {
            wall.denied.set(static_cast<int>(i));
        }
    }
    return wall;
}

bool check_access(const binary_subject_wall& sw, const binary_object_wall& ow)
{
    return !sw.granted.intersects(ow.conflicting) && !sw.denied.intersects(ow.authorized);
}

binary_subject_wall update_on_read(binary_subject_wall sw, const binary_object_wall& ow)
{
    sw.granted.merge(ow.authorized);
    sw.denied.merge(ow.conflicting);
    if (sw.granted.intersects(sw.denied)) {
        throw disjointness_broken("read update would grant and deny the same class for subject " +
                                  sw.subject);
    }
    return sw;
}

binary_object_wall update_on_write(binary_object_wall ow, const binary_subject_wall& sw)
{
    ow.authorized.merge(sw.granted);
    ow.conflicting.merge(sw.denied);
    if (ow.authorized.intersects(ow.conflicting)) {
        throw disjointness_broken(
            "write update would authorize and conflict the same class for object " + ow.object);
    }
    return ow;
}

}  // namespace wallguard
