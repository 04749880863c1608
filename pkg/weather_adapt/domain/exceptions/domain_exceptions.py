"""Exceções de domínio."""
from typing import Mapping


class DomainException(Exception):
    """Exceção base para erros de domínio."""

    pass


class ShapeMismatchException(DomainException):
    """Lançada quando operandos de uma primitiva têm formas incompatíveis."""

    def __init__(self, operation: str, shapes: tuple[tuple[int, ...], ...]):
        """
        Inicializa exceção.

        Args:
            operation: Nome da primitiva
            shapes: Formas dos operandos recebidos
        """
        self.operation = operation
        self.shapes = shapes
        shapes_str = ", ".join(str(s) for s in shapes)
        super().__init__(f"Formas incompatíveis em '{operation}': {shapes_str}")


class TapeConsumedException(DomainException):
    """Lançada quando backward é chamado duas vezes sobre a mesma fita."""

    def __init__(self) -> None:
        """Inicializa exceção."""
        super().__init__(
            "Fita já consumida por um backward anterior. Execute o forward novamente."
        )


class NonFiniteValueException(DomainException):
    """Lançada quando um valor intermediário não é finito."""

    def __init__(self, where: str):
        """
        Inicializa exceção.

        Args:
            where: Descrição do ponto onde o valor foi encontrado
        """
        self.where = where
        super().__init__(f"Valor não finito encontrado em: {where}")


class NonFiniteLossException(DomainException):
    """Lançada quando a perda total de uma iteração não é finita."""

    def __init__(self, iteration: int, terms: Mapping[str, float]):
        """
        Inicializa exceção com os termos da perda.

        Args:
            iteration: Iteração em que a perda divergiu
            terms: Valores de cada termo da perda
        """
        self.iteration = iteration
        self.terms = dict(terms)
        terms_str = ", ".join(f"{k}={v}" for k, v in self.terms.items())
        super().__init__(f"Perda não finita na iteração {iteration}: {terms_str}")


class TeacherMutatedException(DomainException):
    """Lançada quando parâmetros do teacher mudam fora da atualização EMA."""

    def __init__(self, iteration: int, parameter_name: str):
        """
        Inicializa exceção.

        Args:
            iteration: Iteração em que a mutação foi detectada
            parameter_name: Nome do parâmetro alterado
        """
        self.iteration = iteration
        self.parameter_name = parameter_name
        super().__init__(
            f"Parâmetro do teacher '{parameter_name}' alterado antes do EMA "
            f"na iteração {iteration}"
        )


class InvalidConfigKeyException(DomainException):
    """Lançada quando o arquivo de configuração contém chave desconhecida."""

    def __init__(self, key: str):
        """
        Inicializa exceção.

        Args:
            key: Chave desconhecida
        """
        self.key = key
        super().__init__(f"Chave de configuração desconhecida: {key}")


class SchemaMismatchException(DomainException):
    """Lançada quando um arquivo de registros não segue o esquema esperado."""

    def __init__(self, source: str, expected: str, found: str):
        """
        Inicializa exceção.

        Args:
            source: Arquivo ou registro de origem
            expected: Esquema esperado
            found: Esquema encontrado
        """
        self.source = source
        self.expected = expected
        self.found = found
        super().__init__(
            f"Esquema inválido em '{source}': esperado '{expected}', encontrado '{found}'"
        )


class MissingDepthMapException(DomainException):
    """Lançada quando uma imagem de neblina não possui mapa de profundidade pareado."""

    def __init__(self, image_name: str):
        """
        Inicializa exceção.

        Args:
            image_name: Nome da imagem sem profundidade
        """
        self.image_name = image_name
        super().__init__(f"Mapa de profundidade ausente para a imagem: {image_name}")
