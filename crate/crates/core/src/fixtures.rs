//! Matrices transcribed from published constructions, used as fixtures.
//!
//! Each generator matrix is stored as rows of `0`/`1` characters.

/// Displayed 24x24 matrix for the order-24 group SmallGroup(24,8): entry
/// `(i, j)` is the 1-based index of `g_i^{-1} g_j`.
pub const G24_8_DISPLAY: [[u8; 24]; 24] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24],
    [2, 1, 13, 10, 14, 12, 9, 18, 7, 4, 24, 6, 3, 5, 17, 22, 15, 8, 21, 23, 19, 16, 20, 11],
    [3, 13, 1, 14, 10, 16, 17, 23, 15, 5, 21, 22, 2, 4, 9, 6, 7, 20, 24, 18, 11, 12, 8, 19],
    [14, 10, 4, 1, 2, 7, 16, 24, 12, 13, 18, 15, 5, 3, 22, 17, 6, 21, 8, 11, 20, 9, 19, 23],
    [5, 4, 10, 2, 1, 9, 22, 11, 6, 3, 8, 17, 14, 13, 16, 15, 12, 19, 18, 24, 23, 7, 21, 20],
    [24, 11, 19, 17, 9, 1, 8, 4, 18, 15, 22, 2, 21, 7, 20, 3, 23, 10, 6, 5, 12, 13, 14, 16],
    [17, 9, 7, 19, 21, 23, 1, 6, 13, 11, 5, 18, 15, 24, 2, 8, 3, 22, 14, 12, 10, 20, 16, 4],
    [23, 18, 8, 6, 12, 14, 24, 1, 21, 22, 9, 10, 20, 16, 11, 4, 19, 13, 7, 2, 15, 5, 3, 17],
    [9, 17, 15, 11, 24, 18, 13, 22, 1, 19, 4, 23, 7, 21, 3, 20, 2, 6, 10, 16, 14, 8, 12, 5],
    [10, 14, 5, 13, 3, 15, 12, 21, 16, 1, 23, 7, 4, 2, 6, 9, 22, 24, 20, 19, 8, 17, 11, 18],
    [12, 6, 22, 18, 23, 21, 5, 9, 14, 8, 1, 19, 16, 20, 4, 11, 10, 7, 13, 17, 3, 24, 15, 2],
    [11, 24, 21, 15, 7, 2, 18, 10, 8, 17, 16, 1, 19, 9, 23, 13, 20, 4, 12, 14, 6, 3, 5, 22],
    [13, 3, 2, 5, 4, 22, 15, 20, 17, 14, 19, 16, 1, 10, 7, 12, 9, 23, 11, 8, 24, 6, 18, 21],
    [4, 5, 14, 3, 13, 17, 6, 19, 22, 2, 20, 9, 10, 1, 12, 7, 16, 11, 23, 21, 18, 15, 24, 8],
    [15, 7, 9, 21, 19, 20, 2, 12, 3, 24, 14, 8, 17, 11, 1, 18, 13, 16, 5, 6, 4, 23, 22, 10],
    [19, 21, 24, 7, 15, 3, 23, 14, 20, 9, 12, 13, 11, 17, 18, 1, 8, 5, 16, 10, 22, 2, 4, 6],
    [7, 15, 17, 24, 11, 8, 3, 16, 2, 21, 10, 20, 9, 19, 13, 23, 1, 12, 4, 22, 5, 18, 6, 14],
    [18, 23, 20, 22, 16, 10, 21, 13, 24, 6, 17, 14, 8, 12, 19, 5, 11, 1, 15, 3, 7, 4, 2, 9],
    [16, 22, 6, 23, 18, 24, 4, 17, 10, 20, 13, 11, 12, 8, 5, 19, 14, 15, 1, 9, 2, 21, 7, 3],
    [20, 8, 18, 12, 6, 5, 11, 2, 19, 16, 7, 4, 23, 22, 24, 10, 21, 3, 9, 1, 17, 14, 13, 15],
    [22, 16, 12, 20, 8, 11, 10, 15, 4, 23, 3, 24, 6, 18, 14, 21, 5, 17, 2, 7, 1, 19, 9, 13],
    [21, 19, 11, 9, 17, 13, 20, 5, 23, 7, 6, 3, 24, 15, 8, 2, 18, 14, 22, 4, 16, 1, 10, 12],
    [8, 20, 23, 16, 22, 4, 19, 3, 11, 12, 15, 5, 18, 6, 21, 14, 24, 2, 17, 13, 9, 10, 1, 7],
    [6, 12, 16, 8, 20, 19, 14, 7, 5, 18, 2, 21, 22, 23, 10, 24, 4, 9, 3, 15, 13, 11, 17, 1],
];

/// Sigma matrix of `(1+s+s^2+s^3)(1+t)` over F2 M16, as displayed.
pub const M16_SIGMA: [&str; 16] = [
    "1111000011110000",
    "0111100010000111",
    "0011110000111100",
    "0001111011100001",
    "0000111100001111",
    "1000011101111000",
    "1100001111000011",
    "1110000100011110",
    "1111000011110000",
    "1000011101111000",
    "0011110000111100",
    "1110000100011110",
    "0000111100001111",
    "0111100010000111",
    "1100001111000011",
    "0001111011100001",
];

/// Row-reduced generator matrix of the [16,5,8] Reed-Muller code from M16.
pub const M16_REDUCED: [&str; 5] = [
    "1000011101111000",
    "0100010010111011",
    "0010001011011101",
    "0001000111101110",
    "0000111100001111",
];

/// Sigma matrix of `1+ba+ba^2+ba^3` over F2 D8.
pub const D8_SIGMA: [&str; 8] = [
    "10000111",
    "01001110",
    "00101101",
    "00011011",
    "01111000",
    "11100100",
    "11010010",
    "10110001",
];

/// Row-reduced [8,4,4] extended Hamming generator matrix from D8.
pub const D8_REDUCED: [&str; 4] = [
    "10000111",
    "01001110",
    "00101101",
    "00011011",
];

/// Generator matrix equivalent to sigma(1+xz+yz+xyz) over F2 C2^3.
pub const C2C2C2_V1: [&str; 4] = [
    "10000111",
    "01001011",
    "00101101",
    "00011110",
];

/// Generator matrix equivalent to sigma(y+xz+z+xyz) over F2 C2^3.
pub const C2C2C2_V2: [&str; 4] = [
    "10010011",
    "01010101",
    "00110110",
    "00001111",
];

/// Right half `A` of `(I | A)` for the Gray image of the R1 A4 Golay construction.
pub const A4_R1_GOLAY_A: [&str; 12] = [
    "101100101101",
    "111001101010",
    "111110000110",
    "101010011011",
    "100111100011",
    "110011001101",
    "110101110100",
    "011010111100",
    "010111011010",
    "001111010101",
    "011100110011",
    "000001111111",
];

/// Right half `A` of `(I | A)` for the C3 x D8 Golay construction.
pub const C3D8_GOLAY_A: [&str; 12] = [
    "011111001100",
    "111010011001",
    "110100110011",
    "101101100110",
    "110001111100",
    "100111101001",
    "001111010011",
    "011010110110",
    "110011000111",
    "100110011110",
    "001100111101",
    "011001101011",
];

/// Right half `A` of `(I | A)` for the C2 x A4 Golay construction.
pub const C2A4_GOLAY_A: [&str; 12] = [
    "101101010011",
    "011110100011",
    "111001011100",
    "110110101100",
    "010111010110",
    "101011101001",
    "010101111001",
    "101010110110",
    "001101101110",
    "001110011101",
    "110010011011",
    "110001100111",
];

/// Right half `A` of `(I | A)` for the (C6 x C2) : C2 Golay construction.
pub const G24_8_GOLAY_A: [&str; 12] = [
    "010110110011",
    "010011101110",
    "101010111010",
    "001111101001",
    "110111000101",
    "111001100011",
    "110000011111",
    "101101001110",
    "110101111000",
    "001011010111",
    "101100110101",
    "011110011100",
];

