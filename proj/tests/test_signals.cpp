/*
 * Copyright 2026 The lbaug Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#include <lbaug/signals.h>

#include "oracles.h"

#include <doctest.h>

#include <fstream>

using namespace lbaug;

TEST_SUITE("signals")
{
    TEST_CASE("CSV round-trip keeps values and labels")
    {
        SignalSet<double> s;
        s.data = test::random_matrix(5, 7, 1);
        s.data(2, 3) = 1e-300;
        s.labels = {0, 0, 1, -4, 1};
        const auto path = test::temp_dir() / "signals.csv";
        save_signals(s, path);
        const auto back = load_signals<double>(path);
        CHECK(back.data == s.data);
        CHECK(back.labels == s.labels);

        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("label,v0,v1", 0) == 0);
    }

    TEST_CASE("binary round-trip with sidecar")
    {
        SignalSet<double> s;
        s.data = test::random_matrix(4, 9, 2);
        s.labels = {2, 2, 3, 3};
        s.provenance = {"augmented", "c-pda", 987654321987654321ULL};
        const auto path = test::temp_dir() / "signals.bin";
        save_signals(s, path);
        CHECK(std::filesystem::file_size(path) == 8 + 16 + 4 * 9 * 8);
        const auto back = load_signals<double>(path);
        CHECK(back.data == s.data);
        CHECK(back.labels == s.labels);
        CHECK(back.provenance.kind == "augmented");
        CHECK(back.provenance.method == "c-pda");
        CHECK(back.provenance.seed == s.provenance.seed);

        std::filesystem::remove(path.string() + ".json");
        CHECK_THROWS_AS(load_signals<double>(path), Error);
    }

    TEST_CASE("malformed files")
    {
        const auto dir = test::temp_dir();
        {
            std::ofstream out(dir / "ragged.csv");
            out << "label,v0,v1\n0,1,2\n1,3\n";
        }
        try {
            load_signals<double>(dir / "ragged.csv");
            FAIL("expected an error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
        {
            std::ofstream out(dir / "nan.csv");
            out << "0,1,nan\n";
        }
        CHECK_THROWS_AS(load_signals<double>(dir / "nan.csv"), Error);
        {
            std::ofstream out(dir / "word.csv");
            out << "0,1,abc\n";
        }
        CHECK_THROWS_AS(load_signals<double>(dir / "word.csv"), ParseError);
        {
            std::ofstream out(dir / "short.bin", std::ios::binary);
            out << "LBAUGSM1";
        }
        CHECK_THROWS_AS(load_signals<double>(dir / "short.bin"), ParseError);
        CHECK_THROWS_AS(load_signals<double>(dir / "signals.txt"), Error);
        CHECK_THROWS_AS(load_signals<double>(dir / "absent.csv"), Error);
    }

    TEST_CASE("validation and class selection")
    {
        SignalSet<double> s;
        s.data = test::random_matrix(4, 3, 3);
        s.labels = {1, 0, 1, 0};
        CHECK_NOTHROW(validate_signals(s));
        CHECK(class_labels(s) == std::vector<int>{0, 1});
        const auto ones = select_class(s, 1);
        CHECK(ones.size() == 2);
        CHECK(ones.data.row(1) == s.data.row(2));
        s.labels.pop_back();
        CHECK_THROWS_AS(validate_signals(s), ValidationError);
    }
}
