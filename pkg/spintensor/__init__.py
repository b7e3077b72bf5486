"""spintensor 패키지: 스핀 텐서 대수 및 스피너 접속 검증 엔진"""

__version__ = "0.1.0"
