// Copyright 2026 The creativ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small modules with their canonical printing and pinned data-flow graphs.

#pragma once

#include <ostream>

namespace creativ::testing {

struct GoldenModule {
  const char* name;
  const char* kind;
  const char* source;
  const char* printed;
  const char* graph;
};

inline void PrintTo(const GoldenModule& m, std::ostream* os) { *os << m.name; }

// The last module in each source is the one under test; earlier modules
// form its instance library.
inline const GoldenModule kGolden[] = {
    {"and_gate", "combinational",
     R"(module top_module(input a, input b, output out);
  assign out = a & b;
endmodule
)",
     R"(module top_module(
  input a,
  input b,
  output out
);
  assign out = a & b;
endmodule
)",
     R"(0 input:1
1 input:1
2 output:1
3 op:and
0 -> 3
1 -> 3
3 -> 2
)"},
    {"mux2", "combinational",
     R"(module top_module(input a, input b, input sel, output out);
  assign out = sel ? b : a;
endmodule
)",
     R"(module top_module(
  input a,
  input b,
  input sel,
  output out
);
  assign out = sel ? b : a;
endmodule
)",
     R"(0 input:1
1 input:1
2 input:1
3 output:1
4 mux
2 -> 4
1 -> 4
0 -> 4
4 -> 3
)"},
    {"adder2", "combinational",
     R"(module top_module(input [1:0] a, input [1:0] b, output [2:0] sum);
  assign sum = a + b;
endmodule
)",
     R"(module top_module(
  input [1:0] a,
  input [1:0] b,
  output [2:0] sum
);
  assign sum = a + b;
endmodule
)",
     R"(0 input:2
1 input:2
2 output:3
3 op:add
0 -> 3
1 -> 3
3 -> 2
)"},
    {"dff", "sequential",
     R"(module top_module(input clk, input d, output reg q);
  always @(posedge clk)
    q <= d;
endmodule
)",
     R"(module top_module(
  input clk,
  input d,
  output reg q
);
  always @(posedge clk)
    q <= d;
endmodule
)",
     R"(0 input:1
1 input:1
2 output:1
3 reg
1 -> 3
0 -> 3
3 -> 2
)"},
    {"dff_reset", "sequential",
     R"(module top_module(input clk, input reset, input d, output reg q);
  always @(posedge clk)
    if (reset)
      q <= 1'b0;
    else
      q <= d;
endmodule
)",
     R"(module top_module(
  input clk,
  input reset,
  input d,
  output reg q
);
  always @(posedge clk)
    if (reset)
      q <= 1'b0;
    else
      q <= d;
endmodule
)",
     R"(0 input:1
1 input:1
2 input:1
3 output:1
4 const
5 mux
6 reg
1 -> 5
4 -> 5
2 -> 5
5 -> 6
0 -> 6
6 -> 3
)"},
    {"mux4_case", "case",
     R"(module top_module(input [3:0] d, input [1:0] sel, output reg out);
  always @(*)
    case (sel)
      2'd0: out = d[0];
      2'd1: out = d[1];
      2'd2: out = d[2];
      default: out = d[3];
    endcase
endmodule
)",
     R"(module top_module(
  input [3:0] d,
  input [1:0] sel,
  output reg out
);
  always @(*)
    case (sel)
      2'd0:
        out = d[0];
      2'd1:
        out = d[1];
      2'd2:
        out = d[2];
      default:
        out = d[3];
    endcase
endmodule
)",
     R"(0 input:4
1 input:2
2 output:1
3 const
4 op:index
5 const
6 op:index
7 const
8 op:index
9 op:index
10 mux
0 -> 4
0 -> 6
0 -> 8
0 -> 9
1 -> 10
3 -> 10
5 -> 10
7 -> 10
4 -> 10
6 -> 10
8 -> 10
9 -> 10
10 -> 2
)"},
    {"full_adder", "instantiation",
     R"(module half_adder(input a, input b, output s, output c);
  assign s = a ^ b;
  assign c = a & b;
endmodule
module top_module(input a, input b, input cin, output sum, output cout);
  wire s1, c1, c2;
  half_adder ha0(.a(a), .b(b), .s(s1), .c(c1));
  half_adder ha1(.a(s1), .b(cin), .s(sum), .c(c2));
  assign cout = c1 | c2;
endmodule
)",
     R"(module top_module(
  input a,
  input b,
  input cin,
  output sum,
  output cout
);
  wire s1;
  wire c1;
  wire c2;
  half_adder ha0(.a(a), .b(b), .s(s1), .c(c1));
  half_adder ha1(.a(s1), .b(cin), .s(sum), .c(c2));
  assign cout = c1 | c2;
endmodule
)",
     R"(0 input:1
1 input:1
2 input:1
3 output:1
4 output:1
5 wire
6 wire
7 wire
8 instance:half_adder
9 instance:half_adder
10 op:or
0 -> 8
1 -> 8
8 -> 5
8 -> 6
5 -> 9
2 -> 9
9 -> 3
9 -> 7
6 -> 10
7 -> 10
10 -> 4
)"},
    {"concat_add", "combinational",
     R"(module top_module(input a, input b, input cin, output sum, output cout);
  assign {cout, sum} = a + b + cin;
endmodule
)",
     R"(module top_module(
  input a,
  input b,
  input cin,
  output sum,
  output cout
);
  assign {cout, sum} = (a + b) + cin;
endmodule
)",
     R"(0 input:1
1 input:1
2 input:1
3 output:1
4 output:1
5 op:add
6 op:add
0 -> 5
1 -> 5
5 -> 6
2 -> 6
6 -> 4
6 -> 3
)"},
    {"counter", "sequential",
     R"(module top_module(input clk, input rst, output reg [3:0] q);
  localparam STEP = 1;
  always @(posedge clk)
    if (rst) q <= 0;
    else q <= q + STEP;
endmodule
)",
     R"(module top_module(
  input clk,
  input rst,
  output reg [3:0] q
);
  localparam STEP = 1;
  always @(posedge clk)
    if (rst)
      q <= 0;
    else
      q <= q + STEP;
endmodule
)",
     R"(0 input:1
1 input:1
2 output:4
3 const
4 const
5 op:add
6 mux
7 reg
2 -> 5
4 -> 5
1 -> 6
3 -> 6
5 -> 6
6 -> 7
0 -> 7
7 -> 2
)"},
    {"comb_block", "combinational",
     R"(module top_module(input a, input b, input c, output reg y);
  reg t;
  always @(*) begin
    t = a ^ b;
    y = t & c;
  end
endmodule
)",
     R"(module top_module(
  input a,
  input b,
  input c,
  output reg y
);
  reg t;
  always @(*)
    begin
      t = a ^ b;
      y = t & c;
    end
endmodule
)",
     R"(0 input:1
1 input:1
2 input:1
3 output:1
4 wire
5 op:xor
6 op:and
0 -> 5
1 -> 5
5 -> 6
2 -> 6
5 -> 4
6 -> 3
)"},
    {"selects", "combinational",
     R"(module top_module(input [3:0] a, input [1:0] b, output y);
  assign y = &a[3:1] | b[0];
endmodule
)",
     R"(module top_module(
  input [3:0] a,
  input [1:0] b,
  output y
);
  assign y = (&a[3:1]) | b[0];
endmodule
)",
     R"(0 input:4
1 input:2
2 output:1
3 op:range
4 op:reduce_and
5 op:index
6 op:or
0 -> 3
3 -> 4
1 -> 5
4 -> 6
5 -> 6
6 -> 2
)"},
    {"compare_shift", "combinational",
     R"(module top_module(input [3:0] a, input [3:0] b, output gt, output [3:0] sh);
  assign gt = a > b;
  assign sh = a << 2;
endmodule
)",
     R"(module top_module(
  input [3:0] a,
  input [3:0] b,
  output gt,
  output [3:0] sh
);
  assign gt = a > b;
  assign sh = a << 2;
endmodule
)",
     R"(0 input:4
1 input:4
2 output:1
3 output:4
4 op:gt
5 const
6 op:shl
0 -> 4
1 -> 4
4 -> 2
0 -> 6
5 -> 6
6 -> 3
)"},
    {"positional", "instantiation",
     R"(module inv(input a, output y);
  assign y = ~a;
endmodule
module top_module(input x, output z);
  inv u0(x, z);
endmodule
)",
     R"(module top_module(
  input x,
  output z
);
  inv u0(x, z);
endmodule
)",
     R"(0 input:1
1 output:1
2 instance:inv
0 -> 2
2 -> 1
)"},
};

}  // namespace creativ::testing
