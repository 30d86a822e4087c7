"""Published S-Boxes shipped as fixtures, in the 16x16 hex grid layout."""

from enum import Enum

from sboxlab.errors import InvalidInputError
from sboxlab.sbox.sbox import SBox


class BuiltinSBox(Enum):
    AES = "aes"
    SM4 = "sm4"
    SKIPJACK = "skipjack"
    WHIRLPOOL = "whirlpool"
    ZUC_S0 = "zuc_s0"
    ZUC_S1 = "zuc_s1"
    ECM_STRONG = "ecm_strong"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

# FIPS-197 SubBytes
_AES = """
63 7C 77 7B F2 6B 6F C5 30 01 67 2B FE D7 AB 76
CA 82 C9 7D FA 59 47 F0 AD D4 A2 AF 9C A4 72 C0
B7 FD 93 26 36 3F F7 CC 34 A5 E5 F1 71 D8 31 15
04 C7 23 C3 18 96 05 9A 07 12 80 E2 EB 27 B2 75
09 83 2C 1A 1B 6E 5A A0 52 3B D6 B3 29 E3 2F 84
53 D1 00 ED 20 FC B1 5B 6A CB BE 39 4A 4C 58 CF
D0 EF AA FB 43 4D 33 85 45 F9 02 7F 50 3C 9F A8
51 A3 40 8F 92 9D 38 F5 BC B6 DA 21 10 FF F3 D2
CD 0C 13 EC 5F 97 44 17 C4 A7 7E 3D 64 5D 19 73
60 81 4F DC 22 2A 90 88 46 EE B8 14 DE 5E 0B DB
E0 32 3A 0A 49 06 24 5C C2 D3 AC 62 91 95 E4 79
E7 C8 37 6D 8D D5 4E A9 6C 56 F4 EA 65 7A AE 08
BA 78 25 2E 1C A6 B4 C6 E8 DD 74 1F 4B BD 8B 8A
70 3E B5 66 48 03 F6 0E 61 35 57 B9 86 C1 1D 9E
E1 F8 98 11 69 D9 8E 94 9B 1E 87 E9 CE 55 28 DF
8C A1 89 0D BF E6 42 68 41 99 2D 0F B0 54 BB 16
"""

# GB/T 32907 SM4
_SM4 = """
D6 90 E9 FE CC E1 3D B7 16 B6 14 C2 28 FB 2C 05
2B 67 9A 76 2A BE 04 C3 AA 44 13 26 49 86 06 99
9C 42 50 F4 91 EF 98 7A 33 54 0B 43 ED CF AC 62
E4 B3 1C A9 C9 08 E8 95 80 DF 94 FA 75 8F 3F A6
47 07 A7 FC F3 73 17 BA 83 59 3C 19 E6 85 4F A8
68 6B 81 B2 71 64 DA 8B F8 EB 0F 4B 70 56 9D 35
1E 24 0E 5E 63 58 D1 A2 25 22 7C 3B 01 21 78 87
D4 00 46 57 9F D3 27 52 4C 36 02 E7 A0 C4 C8 9E
EA BF 8A D2 40 C7 38 B5 A3 F7 F2 CE F9 61 15 A1
E0 AE 5D A4 9B 34 1A 55 AD 93 32 30 F5 8C B1 E3
1D F6 E2 2E 82 66 CA 60 C0 29 23 AB 0D 53 4E 6F
D5 DB 37 45 DE FD 8E 2F 03 FF 6A 72 6D 6C 5B 51
8D 1B AF 92 BB DD BC 7F 11 D9 5C 41 1F 10 5A D8
0A C1 31 88 A5 CD 7B BD 2D 74 D0 12 B8 E5 B4 B0
89 69 97 4A 0C 96 77 7E 65 B9 F1 09 C5 6E C6 84
18 F0 7D EC 3A DC 4D 20 79 EE 5F 3E D7 CB 39 48
"""

# Skipjack F-table
_SKIPJACK = """
A3 D7 09 83 F8 48 F6 F4 B3 21 15 78 99 B1 AF F9
E7 2D 4D 8A CE 4C CA 2E 52 95 D9 1E 4E 38 44 28
0A DF 02 A0 17 F1 60 68 12 B7 7A C3 E9 FA 3D 53
96 84 6B BA F2 63 9A 19 7C AE E5 F5 F7 16 6A A2
39 B6 7B 0F C1 93 81 1B EE B4 1A EA D0 91 2F B8
55 B9 DA 85 3F 41 BF E0 5A 58 80 5F 66 0B D8 90
35 D5 C0 A7 33 06 65 69 45 00 94 56 6D 98 9B 76
97 FC B2 C2 B0 FE DB 20 E1 EB D6 E4 DD 47 4A 1D
42 ED 9E 6E 49 3C CD 43 27 D2 07 D4 DE C7 67 18
89 CB 30 1F 8D C6 8F AA C8 74 DC C9 5D 5C 31 A4
70 88 61 2C 9F 0D 2B 87 50 82 54 64 26 7D 03 40
34 4B 1C 73 D1 C4 FD 3B CC FB 7F AB E6 3E 5B A5
AD 04 23 9C 14 51 22 F0 29 79 71 7E FF 8C 0E E2
0C EF BC 72 75 6F 37 A1 EC D3 8E 62 8B 86 10 E8
08 77 11 BE 92 4F 24 C5 32 36 9D CF F3 A6 BB AC
5E 6C A9 13 57 25 B5 E3 BD A8 3A 01 05 59 2A 46
"""

# Whirlpool
_WHIRLPOOL = """
18 23 C6 E8 87 B8 01 4F 36 A6 D2 F5 79 6F 91 52
60 BC 9B 8E A3 0C 7B 35 1D E0 D7 C2 2E 4B FE 57
15 77 37 E5 9F F0 4A DA 58 C9 29 0A B1 A0 6B 85
BD 5D 10 F4 CB 3E 05 67 E4 27 41 8B A7 7D 95 D8
FB EE 7C 66 DD 17 47 9E CA 2D BF 07 AD 5A 83 33
63 02 AA 71 C8 19 49 D9 F2 E3 5B 88 9A 26 32 B0
E9 0F D5 80 BE CD 34 48 FF 7A 90 5F 20 68 1A AE
B4 54 93 22 64 F1 73 12 40 08 C3 EC DB A1 8D 3D
97 00 CF 2B 76 82 D6 1B B5 AF 6A 50 45 F3 30 EF
3F 55 A2 EA 65 BA 2F C0 DE 1C FD 4D 92 75 06 8A
B2 E6 0E 1F 62 D4 A8 96 F9 C5 25 59 84 72 39 4C
5E 78 38 8C D1 A5 E2 61 B3 21 9C 1E 43 C7 FC 04
51 99 6D 0D FA DF 7E 24 3B AB CE 11 8F 4E B7 EB
3C 81 94 F7 B9 13 2C D3 E7 6E C4 03 56 44 7F A9
2A BB C1 53 DC 0B 9D 6C 31 74 F6 46 AC 89 14 E1
16 3A 69 09 70 B6 D0 ED CC 42 98 A4 28 5C F8 86
"""

# ZUC S0
_ZUC_S0 = """
3E 72 5B 47 CA E0 00 33 04 D1 54 98 09 B9 6D CB
7B 1B F9 32 AF 9D 6A A5 B8 2D FC 1D 08 53 03 90
4D 4E 84 99 E4 CE D9 91 DD B6 85 48 8B 29 6E AC
CD C1 F8 1E 73 43 69 C6 B5 BD FD 39 63 20 D4 38
76 7D B2 A7 CF ED 57 C5 F3 2C BB 14 21 06 55 9B
E3 EF 5E 31 4F 7F 5A A4 0D 82 51 49 5F BA 58 1C
4A 16 D5 17 A8 92 24 1F 8C FF D8 AE 2E 01 D3 AD
3B 4B DA 46 EB C9 DE 9A 8F 87 D7 3A 80 6F 2F C8
B1 B4 37 F7 0A 22 13 28 7C CC 3C 89 C7 C3 96 56
07 BF 7E F0 0B 2B 97 52 35 41 79 61 A6 4C 10 FE
BC 26 95 88 8A B0 A3 FB C0 18 94 F2 E1 E5 E9 5D
D0 DC 11 66 64 5C EC 59 42 75 12 F5 74 9C AA 23
0E 86 AB BE 2A 02 E7 67 E6 44 A2 6C C2 93 9F F1
F6 FA 36 D2 50 68 9E 62 71 15 3D D6 40 C4 E2 0F
8E 83 77 6B 25 05 3F 0C 30 EA 70 B7 A1 E8 A9 65
8D 27 1A DB 81 B3 A0 F4 45 7A 19 DF EE 78 34 60
"""

# ZUC S1
_ZUC_S1 = """
55 C2 63 71 3B C8 47 86 9F 3C DA 5B 29 AA FD 77
8C C5 94 0C A6 1A 13 00 E3 A8 16 72 40 F9 F8 42
44 26 68 96 81 D9 45 3E 10 76 C6 A7 8B 39 43 E1
3A B5 56 2A C0 6D B3 05 22 66 BF DC 0B FA 62 48
DD 20 11 06 36 C9 C1 CF F6 27 52 BB 69 F5 D4 87
7F 84 4C D2 9C 57 A4 BC 4F 9A DF FE D6 8D 7A EB
2B 53 D8 5C A1 14 17 FB 23 D5 7D 30 67 73 08 09
EE B7 70 3F 61 B2 19 8E 4E E5 4B 93 8F 5D DB A9
AD F1 AE 2E CB 0D FC F4 2D 46 6E 1D 97 E8 D1 E9
4D 37 A5 75 5E 83 9E AB 82 9D B9 1C E0 CD 49 89
01 B6 BD 58 24 A2 5F 38 78 99 15 90 50 B8 95 E4
D0 91 C7 CE ED 0F B4 6F A0 CC F0 02 4A 79 C3 DE
A3 EF EA 51 E6 6B 18 EC 1B 2C 80 F7 74 E7 FF 21
5A 6A 54 1E 41 31 92 35 C4 33 07 0A BA 7E 0E 34
88 B1 98 7C F3 3D 60 6C 7B CA D3 1F 32 65 04 28
64 BE 85 9B 2F 59 8A D7 B0 25 AC AF 12 03 E2 F2
"""

# chaotic strong S-Box, 2D-ECM (gamma=5.385164807134504, k=7)
_ECM_STRONG = """
2F BC 49 EB 21 73 30 47 C6 0F 0C 3E 9C 3F 44 75
14 B0 B4 4E C9 E8 2C C8 D5 0D F8 82 0A FE 5F 34
04 42 E9 EA B8 4C 6A 56 58 C1 FF DC E1 9E B7 6E
A6 13 AA D0 1A 29 0E 57 F2 09 68 11 05 3B 62 7C
3D 1D 90 F7 E0 4F 15 20 A7 F5 B6 4A 27 25 35 C4
52 6C 2E 26 9B 79 C3 92 A3 53 02 88 48 1C 22 28
51 4B 87 40 63 E4 1E DF FA 80 DD D9 83 23 50 6B
8A A9 41 08 97 07 BA DA 76 A4 A5 B2 D2 8E D4 AF
D7 F3 84 03 E6 B1 D8 01 D3 32 86 8F 38 BE CA C0
2A 71 59 10 3C 64 F0 98 AE 9A 70 9F 18 F9 7A 96
B9 CC 67 6F C2 39 E2 8B EC C7 19 E5 5D CE 4D 6D
78 81 AC 3A A2 0B 36 DB 5E 37 7E 8D 55 A0 AD B5
77 5C 89 D1 72 E3 7B F1 06 7F A8 CF 1F FD 5B 1B
95 99 16 33 FC EF 94 45 E7 17 BD BB 7D D6 2D ED
00 A1 5A F4 9D 31 BF 60 CD 91 8C 61 F6 C5 24 93
43 65 54 46 85 74 DE 69 B3 2B 66 12 FB AB EE CB
"""

_GRIDS = {
    BuiltinSBox.AES: _AES,
    BuiltinSBox.SM4: _SM4,
    BuiltinSBox.SKIPJACK: _SKIPJACK,
    BuiltinSBox.WHIRLPOOL: _WHIRLPOOL,
    BuiltinSBox.ZUC_S0: _ZUC_S0,
    BuiltinSBox.ZUC_S1: _ZUC_S1,
    BuiltinSBox.ECM_STRONG: _ECM_STRONG,
}

_ALIASES = {
    "strong": BuiltinSBox.ECM_STRONG,
    "zucs0": BuiltinSBox.ZUC_S0,
    "zucs1": BuiltinSBox.ZUC_S1,
}


def resolve_builtin(name: str | BuiltinSBox) -> BuiltinSBox:
    """Accept an enum member or a case-insensitive name such as "AES" or "zuc_s0"."""
    if isinstance(name, BuiltinSBox):
        return name
    key = name.strip().lower().replace("-", "_")
    try:
        return BuiltinSBox(key)
    except ValueError:
        pass
    if key.replace("_", "") in _ALIASES:
        return _ALIASES[key.replace("_", "")]
    known = ", ".join(b.value for b in BuiltinSBox)
    raise InvalidInputError(f"unknown builtin S-Box {name!r} (known: {known})")


def builtin_sbox(name: str | BuiltinSBox) -> SBox:
    which = resolve_builtin(name)
    return SBox(tuple(bytes.fromhex(_GRIDS[which])), which.value)
